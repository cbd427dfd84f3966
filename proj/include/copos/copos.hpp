#pragma once

#include "copositivity.hpp"
#include "dense.hpp"
#include "preserver.hpp"
#include "rng.hpp"
#include "scalar.hpp"
#include "symspace.hpp"
