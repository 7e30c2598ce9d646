#pragma once

#include "kronecker/benjamin_ono.hpp"
#include "kronecker/classification.hpp"
#include "kronecker/dynamics.hpp"
#include "kronecker/frequency.hpp"
#include "kronecker/hermite.hpp"
#include "kronecker/json_io.hpp"
#include "kronecker/resonance.hpp"
#include "kronecker/solenoid.hpp"
