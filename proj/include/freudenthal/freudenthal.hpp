#pragma once

#include "arithmetic.hpp"
#include "complex.hpp"
#include "io.hpp"
#include "kernel.hpp"
#include "oracle.hpp"
#include "quality.hpp"
#include "subdivision.hpp"
