#pragma once

#include "types.hpp"
#include "clifford.hpp"
#include "polynomial.hpp"
#include "geometry.hpp"
#include "kernels.hpp"
#include "boundary_ops.hpp"
#include "hopf_ops.hpp"
#include "symbols.hpp"
#include "toeplitz.hpp"
#include "cayley.hpp"

namespace cliffop {
inline constexpr const char* kVersion = "0.1.0";
}
