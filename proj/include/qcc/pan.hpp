#pragma once

// N-path generalization with N-1 two-level properties.
//
// The space is path (x) property_1 (x) ... (x) property_{N-1}, dimension
// N * 2^(N-1). Property 1 is the most significant bit of the property index;
// a set bit is the value "1" of that property. Path 0 (I) is the reference.

#include <span>
#include <vector>

#include "qcc/hilbert.hpp"

namespace qcc::pan {

inline constexpr int kMinPaths = 2;
inline constexpr int kMaxPaths = 6;

std::size_t dimension(int n);

/// Composite index of path `path` (0-based) with property bits `bits`.
std::size_t index(int n, int path, unsigned bits);

/// All properties at value 1.
unsigned all_ones(int n);

/// Bits with property p (1-based) flipped from all-ones.
unsigned flipped(int n, int p);

struct States {
  CVec pre;
  CVec post;
};

/// Preselection sum_j |j>|1..1 with property (j-1) flipped> / sqrt(N) and
/// postselection sum_j exp(i chi_j)|j>|1..1> / sqrt(N). `phases` holds chi_j
/// for j = 1..N in order.
States states(int n, std::span<const double> phases);

/// sigma^p_x Pi_j with p in 1..N-1 and j in 1..N.
CMat generator(int n, int p, int j);

/// exp(-i alpha/2 sigma^p_x Pi_j) in closed form.
CMat rotation(int n, int p, int j, double alpha);

/// 1 - (1 - sqrt(1 - A)) Pi_j
CMat absorber(int n, int j, double absorption);

/// |<f_N| O^p_j(alpha) |i_N>|^2 by propagating the state.
double intensity(int n, int p, int j, double alpha, std::span<const double> phases);

/// Printed exact formula, with chi_p read as the phase of the path that hosts
/// the flipped property p (path p+1).
double intensity_closed(int n, int p, int j, double alpha, std::span<const double> phases);

/// Absorber in path j of the N-path setup, propagated.
double absorber_intensity(int n, int j, double absorption, std::span<const double> phases);

/// <f_N| sigma^p_x Pi_j |i_N> / <f_N|i_N>
Complex weak_value_flip(int n, int p, int j, std::span<const double> phases);

/// <f_N| Pi_j |i_N> / <f_N|i_N>
Complex weak_value_path(int n, int j, std::span<const double> phases);

}  // namespace qcc::pan
