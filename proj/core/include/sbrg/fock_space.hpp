#pragma once

#include "sbrg/mode_grid.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace sbrg {

using Occ = std::vector<std::uint8_t>;

/// Truncated bosonic Fock space over a ModeGrid, optionally tensored with the
/// two-level spin space.  The boson basis is enumerated deterministically,
/// graded by total occupation; with spin the layout is [up block | down block].
struct FockSpace {
    ModeGrid grid;
    int max_total_occupation = 1;
    bool with_spin = false;

    std::vector<Occ> basis;          // boson part, graded then lexicographic
    std::vector<double> energies;    // H_f eigenvalue per boson basis state
    std::vector<int> total_occ;      // sum of occupations per state

    int boson_dim() const { return static_cast<int>(basis.size()); }
    int dim() const { return with_spin ? 2 * boson_dim() : boson_dim(); }

    int index_of(const Occ& o) const; // -1 if not in basis
    /// Global index of (spin s, boson state b); s = 0 up, s = 1 down.
    int spin_index(int s, int b) const { return s * boson_dim() + b; }

    static FockSpace make(ModeGrid grid, int n_max, bool with_spin);

  private:
    std::unordered_map<std::uint64_t, int> index_;
    static std::uint64_t key(const Occ& o);
};

/// C(m + n, n) as double-checked integer arithmetic.
std::int64_t binomial(int m, int n);

} // namespace sbrg
