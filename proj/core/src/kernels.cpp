#include "sbrg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sbrg {

RGrid RGrid::over_unit(int points_on_unit, double r_max) {
    if (points_on_unit < 2) throw std::invalid_argument("RGrid: need >= 2 points");
    RGrid g;
    double h = 1.0 / (points_on_unit - 1);
    int extra = std::max(0, static_cast<int>(std::ceil((r_max - 1.0) / h - 1e-12)));
    g.n = points_on_unit + extra;
    g.r_max = (g.n - 1) * h;
    return g;
}

std::size_t Kernel::ktuples() const {
    std::size_t p = 1;
    for (int i = 0; i < m + n; ++i) p *= static_cast<std::size_t>(nk());
    return p;
}

std::size_t Kernel::flat(int ir, std::size_t kc, std::size_t ka) const {
    std::size_t pn = 1;
    for (int i = 0; i < n; ++i) pn *= static_cast<std::size_t>(nk());
    std::size_t pm = 1;
    for (int i = 0; i < m; ++i) pm *= static_cast<std::size_t>(nk());
    return (static_cast<std::size_t>(ir) * pm + kc) * pn + ka;
}

Kernel Kernel::zeros(int m, int n, const RGrid& rg, std::vector<double> knodes,
                     std::vector<double> kweights, bool masked) {
    Kernel k;
    k.m = m;
    k.n = n;
    k.rgrid = rg;
    k.knodes = std::move(knodes);
    k.kweights = std::move(kweights);
    k.masked = masked && (m + n >= 1);
    k.val.assign(k.size(), 0.0);
    k.dr.assign(k.size(), 0.0);
    return k;
}

bool Kernel::in_support(double r, double sum_create, double sum_annih) const {
    if (!masked) return r >= -1e-12 && r <= rgrid.r_max + 1e-12;
    return r <= 1.0 - std::max(sum_create, sum_annih) + 1e-12;
}

namespace {
struct ArgStencil {
    int cell = 0;
    double t = 0.0;
};

inline ArgStencil k_stencil(const std::vector<double>& nodes, double k) {
    ArgStencil s;
    int nk = static_cast<int>(nodes.size());
    if (nk == 1) return s; // constant in this argument
    int j = static_cast<int>(std::upper_bound(nodes.begin(), nodes.end(), k) - nodes.begin()) - 1;
    j = std::clamp(j, 0, nk - 2);
    s.cell = j;
    s.t = (k - nodes[j]) / (nodes[j + 1] - nodes[j]);
    return s;
}
} // namespace

KernelPoint Kernel::eval(double r, std::span<const double> kc, std::span<const double> ka) const {
    if (static_cast<int>(kc.size()) != m || static_cast<int>(ka.size()) != n)
        throw std::invalid_argument("Kernel::eval: argument arity mismatch");
    double sc = std::accumulate(kc.begin(), kc.end(), 0.0);
    double sa = std::accumulate(ka.begin(), ka.end(), 0.0);
    if (masked && !in_support(r, sc, sa)) return {};
    if (!masked && r > rgrid.r_max + 1e-12) return {};

    const int d = m + n;
    std::array<ArgStencil, 8> st;
    for (int i = 0; i < m; ++i) st[i] = k_stencil(knodes, kc[i]);
    for (int i = 0; i < n; ++i) st[m + i] = k_stencil(knodes, ka[i]);

    const double h = rgrid.h();
    int ir = std::clamp(static_cast<int>(std::floor(r / h)), 0, rgrid.n - 2);
    double t = (r - ir * h) / h;

    double p0 = 0.0, d0 = 0.0, p1 = 0.0, d1 = 0.0;
    const int corners = 1 << d;
    const int nkv = nk();
    for (int c = 0; c < corners; ++c) {
        double wgt = 1.0;
        std::size_t kci = 0, kai = 0;
        for (int i = 0; i < m; ++i) {
            int hi = (c >> i) & 1;
            wgt *= hi ? st[i].t : (1.0 - st[i].t);
            kci = kci * nkv + (st[i].cell + hi);
        }
        for (int i = 0; i < n; ++i) {
            int hi = (c >> (m + i)) & 1;
            wgt *= hi ? st[m + i].t : (1.0 - st[m + i].t);
            kai = kai * nkv + (st[m + i].cell + hi);
        }
        if (wgt == 0.0) continue;
        std::size_t f0 = flat(ir, kci, kai), f1 = flat(ir + 1, kci, kai);
        p0 += wgt * val[f0];
        d0 += wgt * dr[f0];
        p1 += wgt * val[f1];
        d1 += wgt * dr[f1];
    }

    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    double g00 = 6 * t2 - 6 * t, g10 = 3 * t2 - 4 * t + 1;
    double g01 = -6 * t2 + 6 * t, g11 = 3 * t2 - 2 * t;
    KernelPoint out;
    out.v = h00 * p0 + h10 * h * d0 + h01 * p1 + h11 * h * d1;
    out.dv = (g00 * p0 + g01 * p1) / h + g10 * d0 + g11 * d1;
    return out;
}

KernelPoint Kernel::eval_at_nodes(double r, std::span<const int> kc_idx,
                                  std::span<const int> ka_idx) const {
    std::size_t kci = 0, kai = 0;
    double sc = 0.0, sa = 0.0;
    const int nkv = nk();
    for (int i : kc_idx) {
        kci = kci * nkv + i;
        sc += knodes[i];
    }
    for (int i : ka_idx) {
        kai = kai * nkv + i;
        sa += knodes[i];
    }
    if (masked && !in_support(r, sc, sa)) return {};
    if (!masked && r > rgrid.r_max + 1e-12) return {};
    const double h = rgrid.h();
    int ir = std::clamp(static_cast<int>(std::floor(r / h)), 0, rgrid.n - 2);
    double t = (r - ir * h) / h;
    std::size_t f0 = flat(ir, kci, kai), f1 = flat(ir + 1, kci, kai);
    double t2 = t * t, t3 = t2 * t;
    KernelPoint out;
    out.v = (2 * t3 - 3 * t2 + 1) * val[f0] + (t3 - 2 * t2 + t) * h * dr[f0] +
            (-2 * t3 + 3 * t2) * val[f1] + (t3 - t2) * h * dr[f1];
    out.dv = ((6 * t2 - 6 * t) * val[f0] + (-6 * t2 + 6 * t) * val[f1]) / h +
             (3 * t2 - 4 * t + 1) * dr[f0] + (3 * t2 - 2 * t) * dr[f1];
    return out;
}

double Kernel::sup_norm() const {
    double s = 0.0;
    for (double v : val) s = std::max(s, std::abs(v));
    return s;
}

double Kernel::dr_sup_norm() const {
    double s = 0.0;
    for (double v : dr) s = std::max(s, std::abs(v));
    return s;
}

double Kernel::sharp_norm() const { return sup_norm() + dr_sup_norm(); }

namespace {
// iterate over all index tuples of length d with base nk
template <class F> void for_tuples(int d, int nk, F&& fn) {
    std::vector<int> idx(d, 0);
    for (;;) {
        fn(idx);
        int j = d - 1;
        for (; j >= 0; --j) {
            if (++idx[j] < nk) break;
            idx[j] = 0;
        }
        if (j < 0) break;
        if (d == 0) break;
    }
}
} // namespace

double Kernel::l2_norm() const {
    const int d = m + n;
    const int nkv = nk();
    double acc = 0.0;
    std::vector<double> lw(nkv);
    for (int i = 0; i < nkv; ++i)
        lw[i] = 4.0 * M_PI * kweights[i] / (knodes[i] * knodes[i]);
    if (d == 0) {
        double mx = 0.0;
        for (int ir = 0; ir < rgrid.n; ++ir)
            if (rgrid.point(ir) <= 1.0 + 1e-12) mx = std::max(mx, std::abs(val[ir]));
        return mx;
    }
    for_tuples(d, nkv, [&](const std::vector<int>& idx) {
        double wgt = 1.0;
        std::size_t kci = 0, kai = 0;
        for (int i = 0; i < m; ++i) {
            wgt *= lw[idx[i]];
            kci = kci * nkv + idx[i];
        }
        for (int i = 0; i < n; ++i) {
            wgt *= lw[idx[m + i]];
            kai = kai * nkv + idx[m + i];
        }
        double mx = 0.0;
        for (int ir = 0; ir < rgrid.n; ++ir)
            mx = std::max(mx, std::abs(val[flat(ir, kci, kai)]));
        acc += wgt * mx * mx;
    });
    return std::sqrt(acc);
}

double Kernel::support_measure() const {
    const int d = m + n;
    const int nkv = nk();
    if (d == 0) return 1.0;
    std::vector<double> lw(nkv);
    for (int i = 0; i < nkv; ++i)
        lw[i] = 4.0 * M_PI * kweights[i] / (knodes[i] * knodes[i]);
    double acc = 0.0;
    for_tuples(d, nkv, [&](const std::vector<int>& idx) {
        double wgt = 1.0, sc = 0.0, sa = 0.0;
        for (int i = 0; i < m; ++i) {
            wgt *= lw[idx[i]];
            sc += knodes[idx[i]];
        }
        for (int i = 0; i < n; ++i) {
            wgt *= lw[idx[m + i]];
            sa += knodes[idx[m + i]];
        }
        if (sc <= 1.0 + 1e-12 && sa <= 1.0 + 1e-12) acc += wgt;
    });
    return acc;
}

void Kernel::apply_mask() {
    if (!masked) return;
    const int nkv = nk();
    for_tuples(m + n, nkv, [&](const std::vector<int>& idx) {
        double sc = 0.0, sa = 0.0;
        std::size_t kci = 0, kai = 0;
        for (int i = 0; i < m; ++i) {
            sc += knodes[idx[i]];
            kci = kci * nkv + idx[i];
        }
        for (int i = 0; i < n; ++i) {
            sa += knodes[idx[m + i]];
            kai = kai * nkv + idx[m + i];
        }
        for (int ir = 0; ir < rgrid.n; ++ir) {
            if (!in_support(rgrid.point(ir), sc, sa)) {
                val[flat(ir, kci, kai)] = 0.0;
                dr[flat(ir, kci, kai)] = 0.0;
            }
        }
    });
}

Kernel Kernel::symmetrized() const {
    Kernel out = *this;
    if (m + n <= 1) return out;
    std::fill(out.val.begin(), out.val.end(), 0.0);
    std::fill(out.dr.begin(), out.dr.end(), 0.0);
    std::vector<int> pc(m), pa(n);
    std::iota(pc.begin(), pc.end(), 0);
    std::iota(pa.begin(), pa.end(), 0);
    const int nkv = nk();
    int count = 0;
    std::vector<int> perm_c = pc;
    do {
        std::vector<int> perm_a = pa;
        do {
            ++count;
            for_tuples(m + n, nkv, [&](const std::vector<int>& idx) {
                std::size_t kci = 0, kai = 0, src_c = 0, src_a = 0;
                for (int i = 0; i < m; ++i) {
                    kci = kci * nkv + idx[i];
                    src_c = src_c * nkv + idx[perm_c[i]];
                }
                for (int i = 0; i < n; ++i) {
                    kai = kai * nkv + idx[m + i];
                    src_a = src_a * nkv + idx[m + perm_a[i]];
                }
                for (int ir = 0; ir < rgrid.n; ++ir) {
                    out.val[flat(ir, kci, kai)] += val[flat(ir, src_c, src_a)];
                    out.dr[flat(ir, kci, kai)] += dr[flat(ir, src_c, src_a)];
                }
            });
        } while (std::next_permutation(perm_a.begin(), perm_a.end()));
    } while (std::next_permutation(perm_c.begin(), perm_c.end()));
    double inv = 1.0 / count;
    for (auto& v : out.val) v *= inv;
    for (auto& v : out.dr) v *= inv;
    return out;
}

double Kernel::max_symmetry_defect() const {
    Kernel s = symmetrized();
    double d = 0.0;
    for (std::size_t i = 0; i < val.size(); ++i) d = std::max(d, std::abs(val[i] - s.val[i]));
    return d;
}

const Kernel* KernelSequence::find(int m, int n) const {
    auto it = entries.find({m, n});
    return it == entries.end() ? nullptr : &it->second;
}

Kernel& KernelSequence::at(int m, int n) {
    auto it = entries.find({m, n});
    if (it == entries.end()) throw std::out_of_range("KernelSequence: missing entry");
    return it->second;
}

const Kernel& KernelSequence::at(int m, int n) const {
    auto it = entries.find({m, n});
    if (it == entries.end()) throw std::out_of_range("KernelSequence: missing entry");
    return it->second;
}

double KernelSequence::xi_norm_tail(int min_degree) const {
    double s = 0.0;
    for (const auto& [mn, k] : entries) {
        int deg = mn.first + mn.second;
        if (deg < min_degree) continue;
        s += std::pow(xi, -deg) * k.sharp_norm();
    }
    return s;
}

KernelSequence::BallParams KernelSequence::ball_params() const {
    BallParams b{0.0, 0.0, xi_norm_tail(1)};
    const Kernel& w00 = at(0, 0);
    for (int ir = 0; ir < w00.rgrid.n; ++ir) {
        if (w00.rgrid.point(ir) > 1.0 + 1e-12) break;
        b.alpha = std::max(b.alpha, std::abs(w00.dr[ir] - 1.0));
    }
    b.beta = std::abs(w00.val[0]);
    return b;
}

KernelSequence KernelSequence::free_kernel(double z, const RGrid& rg, std::vector<double> knodes,
                                           std::vector<double> kweights, int max_degree,
                                           double xi) {
    KernelSequence seq;
    seq.max_degree = max_degree;
    seq.xi = xi;
    seq.even_only = true;
    Kernel w00 = Kernel::zeros(0, 0, rg, knodes, kweights, false);
    for (int ir = 0; ir < rg.n; ++ir) {
        w00.val[ir] = rg.point(ir) - z;
        w00.dr[ir] = 1.0;
    }
    seq.entries[{0, 0}] = std::move(w00);
    for (int m = 0; m <= max_degree; ++m)
        for (int n = 0; n <= max_degree - m; ++n) {
            if (m + n == 0 || (m + n) % 2 == 1) continue;
            seq.entries[{m, n}] = Kernel::zeros(m, n, rg, knodes, kweights, true);
        }
    return seq;
}

KernelSequence ParamKernelSequence::interpolate(double z) const {
    if (per_z.empty()) throw std::runtime_error("ParamKernelSequence: empty family");
    for (int j = 0; j < nz(); ++j)
        if (z == zgrid[j]) return per_z[j];
    std::vector<double> bw = barycentric_weights(zgrid);
    std::vector<double> coef(nz());
    double denom = 0.0;
    for (int j = 0; j < nz(); ++j) {
        coef[j] = bw[j] / (z - zgrid[j]);
        denom += coef[j];
    }
    for (auto& c : coef) c /= denom;

    KernelSequence out = per_z.front();
    for (auto& [mn, k] : out.entries) {
        std::fill(k.val.begin(), k.val.end(), 0.0);
        std::fill(k.dr.begin(), k.dr.end(), 0.0);
        for (int j = 0; j < nz(); ++j) {
            const Kernel& src = per_z[j].at(mn.first, mn.second);
            for (std::size_t i = 0; i < k.val.size(); ++i) {
                k.val[i] += coef[j] * src.val[i];
                k.dr[i] += coef[j] * src.dr[i];
            }
        }
    }
    return out;
}

ParamKernelSequence::FamilyBall ParamKernelSequence::family_ball() const {
    FamilyBall b{0.0, 0.0, 0.0};
    for (int j = 0; j < nz(); ++j) {
        auto p = per_z[j].ball_params();
        b.alpha = std::max(b.alpha, p.alpha);
        b.gamma = std::max(b.gamma, p.gamma);
        b.beta = std::max(b.beta, std::abs(per_z[j].at(0, 0).val[0] + zgrid[j]));
    }
    return b;
}

double ParamKernelSequence::max_symmetry_defect() const {
    double d = 0.0;
    for (int j = 0; j < nz(); ++j) {
        for (const auto& [mn, k] : per_z[j].entries) {
            const Kernel& kt = per_z[j].at(mn.second, mn.first);
            // w_{m,n}(z) = conj(w_{n,m}(z)) at real z with real samples: transpose match
            const int nkv = k.nk();
            for_tuples(mn.first + mn.second, nkv, [&](const std::vector<int>& idx) {
                std::size_t kci = 0, kai = 0, tci = 0, tai = 0;
                for (int i = 0; i < mn.first; ++i) kci = kci * nkv + idx[i];
                for (int i = 0; i < mn.second; ++i) kai = kai * nkv + idx[mn.first + i];
                for (int i = 0; i < mn.second; ++i) tci = tci * nkv + idx[mn.first + i];
                for (int i = 0; i < mn.first; ++i) tai = tai * nkv + idx[i];
                for (int ir = 0; ir < k.rgrid.n; ++ir)
                    d = std::max(d, std::abs(k.val[k.flat(ir, kci, kai)] -
                                             kt.val[kt.flat(ir, tci, tai)]));
            });
        }
    }
    return d;
}

std::vector<double> chebyshev_lobatto(int n, double a, double b) {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) {
        double c = std::cos(M_PI * j / (n - 1));
        x[n - 1 - j] = 0.5 * (a + b) + 0.5 * (b - a) * c;
    }
    return x;
}

std::vector<double> barycentric_weights(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<double> w(n, 1.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (k != j) w[j] /= (x[j] - x[k]);
    double mx = 0.0;
    for (double v : w) mx = std::max(mx, std::abs(v));
    for (double& v : w) v /= mx;
    return w;
}

double barycentric_eval(const std::vector<double>& x, const std::vector<double>& w,
                        const std::vector<double>& f, double xq) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (xq == x[j]) return f[j];
        double c = w[j] / (xq - x[j]);
        num += c * f[j];
        den += c;
    }
    return num / den;
}

Kernel sample_kernel(
    int m, int n, const RGrid& rg, std::vector<double> knodes, std::vector<double> kweights,
    const std::function<double(double, std::span<const double>, std::span<const double>)>& f,
    const std::function<double(double, std::span<const double>, std::span<const double>)>& dfdr,
    bool masked) {
    Kernel k = Kernel::zeros(m, n, rg, std::move(knodes), std::move(kweights), masked);
    const int nkv = k.nk();
    std::vector<double> kc(m), ka(n);
    for_tuples(m + n, nkv, [&](const std::vector<int>& idx) {
        std::size_t kci = 0, kai = 0;
        for (int i = 0; i < m; ++i) {
            kc[i] = k.knodes[idx[i]];
            kci = kci * nkv + idx[i];
        }
        for (int i = 0; i < n; ++i) {
            ka[i] = k.knodes[idx[m + i]];
            kai = kai * nkv + idx[m + i];
        }
        for (int ir = 0; ir < rg.n; ++ir) {
            double r = rg.point(ir);
            k.val[k.flat(ir, kci, kai)] = f(r, kc, ka);
            k.dr[k.flat(ir, kci, kai)] = dfdr(r, kc, ka);
        }
    });
    if (masked) k.apply_mask();
    return k;
}

} // namespace sbrg
