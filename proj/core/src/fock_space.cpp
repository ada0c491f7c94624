#include "sbrg/fock_space.hpp"

#include <functional>
#include <stdexcept>

namespace sbrg {

std::int64_t binomial(int m, int n) {
    if (n < 0 || m < 0 || n > m) return 0;
    n = std::min(n, m - n);
    std::int64_t r = 1;
    for (int i = 1; i <= n; ++i) r = r * (m - n + i) / i;
    return r;
}

std::uint64_t FockSpace::key(const Occ& o) {
    // FNV-1a over the occupation bytes; collisions resolved by exact compare on use.
    std::uint64_t h = 1469598103934665603ull;
    for (auto b : o) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

int FockSpace::index_of(const Occ& o) const {
    auto it = index_.find(key(o));
    if (it == index_.end()) return -1;
    if (basis[it->second] != o) {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == o) return static_cast<int>(i);
        return -1;
    }
    return it->second;
}

FockSpace FockSpace::make(ModeGrid grid, int n_max, bool with_spin) {
    if (n_max < 1) throw std::invalid_argument("FockSpace: max_total_occupation >= 1 required");
    grid.validate();
    FockSpace f;
    f.grid = std::move(grid);
    f.max_total_occupation = n_max;
    f.with_spin = with_spin;

    const int m = f.grid.size();
    Occ occ(m, 0);
    // graded: enumerate by total occupation
    for (int total = 0; total <= n_max; ++total) {
        std::function<void(int, int)> emit_exact = [&](int mode, int left) {
            if (mode == m) {
                if (left == 0) f.basis.push_back(occ);
                return;
            }
            for (int n = 0; n <= left; ++n) {
                occ[mode] = static_cast<std::uint8_t>(n);
                emit_exact(mode + 1, left - n);
            }
            occ[mode] = 0;
        };
        emit_exact(0, total);
    }

    f.energies.reserve(f.basis.size());
    f.total_occ.reserve(f.basis.size());
    for (std::size_t i = 0; i < f.basis.size(); ++i) {
        double e = 0.0;
        int t = 0;
        for (int j = 0; j < m; ++j) {
            e += f.basis[i][j] * f.grid.nodes[j];
            t += f.basis[i][j];
        }
        f.energies.push_back(e);
        f.total_occ.push_back(t);
        f.index_[key(f.basis[i])] = static_cast<int>(i);
    }
    return f;
}

} // namespace sbrg
