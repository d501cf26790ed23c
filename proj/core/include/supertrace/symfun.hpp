#pragma once

#include <cstdint>
#include <vector>

#include "supertrace/errors.hpp"
#include "supertrace/freetrace.hpp"
#include "supertrace/rational.hpp"

namespace supertrace::symfun {

// Weakly decreasing positive parts.
struct Partition {
    std::vector<int> rows;

    int weight() const;
    int height() const { return static_cast<int>(rows.size()); }
};

// All partitions of m in reverse-lexicographic order ((m) first, (1,...,1) last).
std::vector<Partition> partitions_of(int m);

// Dimension of the irreducible S_m representation: m! / product of hooks.
Integer hook_dimension(const Partition& lambda);

// c_m(M_n) = sum over partitions of m of height <= n of (hook dimension)^2.
Integer codimension(int m, int n, bool force = false);

// m! - c_m(M_n): dimension of the two-sided ideal generated by the
// antisymmetrizer on n+1 points.
Integer antisymmetrizer_ideal_dim(int m, int n, bool force = false);

// sigma is d-good iff its longest strictly descending subsequence has length
// <= d-1 (patience-style O(m log m) scan).
bool is_d_good(const freetrace::Perm& sigma, int d);
int longest_descending_run(const freetrace::Perm& sigma);
Integer count_d_good(int m, int d, unsigned threads = 1, bool force = false);

}  // namespace supertrace::symfun
