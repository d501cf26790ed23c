#include "supertrace/symfun.hpp"

#include <algorithm>
#include <numeric>

#include "supertrace/parallel.hpp"

namespace supertrace::symfun {

int Partition::weight() const { return std::accumulate(rows.begin(), rows.end(), 0); }

std::vector<Partition> partitions_of(int m) {
    std::vector<Partition> out;
    if (m < 0) return out;
    if (m == 0) {
        out.push_back(Partition{});
        return out;
    }
    std::vector<int> cur;
    // depth-first with parts bounded from above keeps reverse-lex order
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(Partition{cur});
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, m, m);
    return out;
}

Integer hook_dimension(const Partition& lambda) {
    const auto& rows = lambda.rows;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        if (rows[i] < rows[i + 1]) throw Error("partition rows must be weakly decreasing");
    int m = lambda.weight();
    // column lengths
    int width = rows.empty() ? 0 : rows[0];
    std::vector<int> col(width, 0);
    for (int r = 0; r < lambda.height(); ++r)
        for (int c = 0; c < rows[r]; ++c) ++col[c];
    Integer hooks = 1;
    for (int r = 0; r < lambda.height(); ++r)
        for (int c = 0; c < rows[r]; ++c) {
            int hook = (rows[r] - c - 1) + (col[c] - r - 1) + 1;
            hooks *= hook;
        }
    Integer dim = factorial(unsigned(m)) / hooks;
    return dim;
}

Integer codimension(int m, int n, bool force) {
    if (m < 0 || n < 1) throw Error("codimension requires m >= 0, n >= 1");
    if (m > 10 && !force) throw TooLarge("codimension capped at m <= 10 (use force)");
    Integer sum = 0;
    for (auto& lambda : partitions_of(m)) {
        if (lambda.height() > n) continue;
        Integer d = hook_dimension(lambda);
        sum += d * d;
    }
    return sum;
}

Integer antisymmetrizer_ideal_dim(int m, int n, bool force) {
    if (m > 8 && !force) throw TooLarge("antisymmetrizer_ideal_dim capped at m <= 8 (use force)");
    return factorial(unsigned(m)) - codimension(m, n, force);
}

int longest_descending_run(const freetrace::Perm& sigma) {
    // Longest strictly decreasing subsequence = LIS of the negated values.
    std::vector<int> tails;  // tails[k] = smallest attainable tail of an
                             // increasing subsequence of length k+1
    for (int i = 1; i <= sigma.size(); ++i) {
        int v = -sigma.apply(i);
        auto it = std::lower_bound(tails.begin(), tails.end(), v);
        if (it == tails.end())
            tails.push_back(v);
        else
            *it = v;
    }
    return static_cast<int>(tails.size());
}

bool is_d_good(const freetrace::Perm& sigma, int d) {
    if (d < 1) throw Error("d must be >= 1");
    return longest_descending_run(sigma) <= d - 1;
}

Integer count_d_good(int m, int d, unsigned threads, bool force) {
    if (m > 9 && !force) throw TooLarge("count_d_good enumerates S_m, capped at m <= 9 (use force)");
    auto perms = freetrace::Perm::all(m);
    auto flags = parallel_map(
        perms.size(), [&](std::size_t i) { return is_d_good(perms[i], d) ? 1 : 0; }, threads);
    long total = std::accumulate(flags.begin(), flags.end(), 0L);
    return Integer(total);
}

}  // namespace supertrace::symfun
