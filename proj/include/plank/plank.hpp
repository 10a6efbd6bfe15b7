// plank.hpp - umbrella header
#pragma once

#include "plank/certificate.hpp"
#include "plank/complex_ops.hpp"
#include "plank/diagnostics.hpp"
#include "plank/errors.hpp"
#include "plank/instance.hpp"
#include "plank/manifest.hpp"
#include "plank/oracle.hpp"
#include "plank/rng.hpp"
#include "plank/solver.hpp"
