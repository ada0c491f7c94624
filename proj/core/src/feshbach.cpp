#include "sbrg/feshbach.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <sstream>
#include <stdexcept>

namespace sbrg {

namespace {
double opnorm(const Mat& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues()(0);
}

// Columns spanning Ran(chibar): eigenvectors of hermitian chibar above tolerance.
Mat range_basis(const Mat& chibar, double tol = 1e-12) {
    Eigen::SelfAdjointEigenSolver<Mat> es(chibar);
    int n = chibar.rows();
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (std::abs(es.eigenvalues()(i)) > tol) keep.push_back(i);
    Mat u(n, keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) u.col(j) = es.eigenvectors().col(keep[j]);
    return u;
}

Mat kernel_basis(const Mat& a, double sv_threshold) {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double scale = sv.size() ? sv(0) : 0.0;
    std::vector<int> keep;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) <= sv_threshold * std::max(scale, 1.0)) keep.push_back(i);
    Mat k(a.cols(), keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) k.col(j) = svd.matrixV().col(keep[j]);
    return k;
}
} // namespace

std::string PairDiagnostics::summary() const {
    std::ostringstream os;
    os << "partition=" << partition_defect << " [chi,chibar]=" << comm_chi_chibar
       << " [chi,T]=" << comm_chi_t << " ||Tinv||=" << t_inverse_norm
       << " q_left=" << neumann_q_left << " q_right=" << neumann_q_right;
    if (!failed.empty()) {
        os << " failed:";
        for (const auto& f : failed) os << ' ' << f;
    }
    return os.str();
}

Mat complement_cutoff(const Mat& chi) {
    Eigen::SelfAdjointEigenSolver<Mat> es(chi);
    Eigen::VectorXd ev = es.eigenvalues();
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) < -1e-10 || ev(i) > 1.0 + 1e-10)
            throw std::invalid_argument("complement_cutoff: chi spectrum outside [0,1]");
        double x = std::clamp(ev(i), 0.0, 1.0);
        ev(i) = std::sqrt(1.0 - x * x);
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

PairResult make_feshbach_pair(const Mat& h, const Mat& t, const Mat& chi,
                              double invert_threshold) {
    PairResult out;
    PairDiagnostics& d = out.diag;
    const int n = h.rows();
    Mat chibar = complement_cutoff(chi);
    Mat w = h - t;

    Mat one = Mat::Identity(n, n);
    d.partition_defect = opnorm(chi * chi + chibar * chibar - one);
    d.comm_chi_chibar = opnorm(chi * chibar - chibar * chi);
    d.comm_chi_t = std::max(opnorm(chi * t - t * chi), opnorm(chibar * t - t * chibar));
    if (d.partition_defect > 1e-12) d.failed.push_back("(a') partition chi^2+chibar^2=1");
    if (d.comm_chi_chibar > 1e-12) d.failed.push_back("(a') [chi,chibar]=0");
    if (d.comm_chi_t > 1e-12) d.failed.push_back("(a') chi T = T chi");

    Mat u = range_basis(chibar);
    if (u.cols() == 0) {
        // chibar = 0: H_chibar plays no role, conditions (b'), (c') are vacuous.
        FeshbachPair p{h, t, chi, chibar, w, Mat::Zero(n, n), u, d};
        if (!d.failed.empty()) return out;
        out.pair = std::move(p);
        out.diag = out.pair->diag;
        return out;
    }

    Mat t_r = u.adjoint() * t * u;
    Eigen::JacobiSVD<Mat> tsvd(t_r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smin = tsvd.singularValues().tail(1)(0);
    double smax = tsvd.singularValues()(0);
    if (smin <= invert_threshold * std::max(1.0, smax)) {
        d.failed.push_back("(b') T invertible on Ran chibar");
        d.t_inverse_norm = std::numeric_limits<double>::infinity();
        return out;
    }
    Mat t_r_inv = tsvd.solve(Mat::Identity(u.cols(), u.cols()));
    d.t_inverse_norm = opnorm(t_r_inv);
    d.t_condition = smax / smin;

    Mat wbar = chibar * w * chibar;
    Mat tinv_full = u * t_r_inv * u.adjoint(); // T^-1 restricted to Ran chibar, 0 elsewhere
    d.neumann_q_left = opnorm(tinv_full * wbar);
    d.neumann_q_right = opnorm(chibar * w * tinv_full * chibar);
    if (d.neumann_q_left >= 1.0) d.failed.push_back("(c') ||T^-1 chibar W chibar|| < 1");
    if (d.neumann_q_right >= 1.0) d.failed.push_back("(c') ||chibar W T^-1 chibar|| < 1");
    if (!d.failed.empty()) return out;

    Mat hbar_r = u.adjoint() * (t + wbar) * u;
    Mat hbar_r_inv = hbar_r.partialPivLu().solve(Mat::Identity(u.cols(), u.cols()));
    Mat cached = chibar * u * hbar_r_inv * u.adjoint() * chibar;

    out.pair = FeshbachPair{h, t, chi, chibar, w, cached, u, d};
    return out;
}

Mat feshbach_map(const FeshbachPair& p) {
    return p.t + p.chi * p.w * p.chi - p.chi * p.w * p.chibar_hinv_chibar * p.w * p.chi;
}

std::pair<Mat, Mat> q_operators(const FeshbachPair& p) {
    Mat q = p.chi - p.chibar_hinv_chibar * p.w * p.chi;
    Mat qs = p.chi - p.chi * p.w * p.chibar_hinv_chibar;
    return {q, qs};
}

Mat neumann_inverse(const FeshbachPair& p, int terms) {
    const Mat& u = p.ran_chibar_basis;
    if (u.cols() == 0) return Mat::Zero(p.h.rows(), p.h.cols());
    Mat t_r = u.adjoint() * p.t * u;
    Mat w_r = u.adjoint() * (p.chibar * p.w * p.chibar) * u;
    Mat t_r_inv = t_r.partialPivLu().solve(Mat::Identity(u.cols(), u.cols()));
    Mat m = -t_r_inv * w_r;
    Mat acc = t_r_inv;
    Mat pw = Mat::Identity(u.cols(), u.cols());
    for (int k = 1; k <= terms; ++k) {
        pw = m * pw;
        acc += pw * t_r_inv;
    }
    return p.chibar * u * acc * u.adjoint() * p.chibar;
}

IsospectralityReport isospectrality_check(const FeshbachPair& p, double sv_threshold) {
    IsospectralityReport r;
    const int n = p.h.rows();
    Mat f = feshbach_map(p);
    auto [q, qs] = q_operators(p);

    r.hq_identity_residual = opnorm(p.h * q - p.chi * f);

    Eigen::JacobiSVD<Mat> hs(p.h), fs(f);
    double hmin = hs.singularValues().tail(1)(0), hmax = hs.singularValues()(0);
    double fmin = fs.singularValues().tail(1)(0), fmax = fs.singularValues()(0);
    r.h_invertible = hmin > sv_threshold * std::max(1.0, hmax);
    r.f_invertible = fmin > sv_threshold * std::max(1.0, fmax);
    r.consistent = (r.h_invertible == r.f_invertible);

    if (r.h_invertible && r.f_invertible) {
        Mat hinv = p.h.partialPivLu().solve(Mat::Identity(n, n));
        Mat finv = f.partialPivLu().solve(Mat::Identity(n, n));
        r.inverse_formula_residual_h = opnorm(hinv - (q * finv * qs + p.chibar_hinv_chibar));
        // chibar T^-1 chibar with the restricted inverse
        const Mat& u = p.ran_chibar_basis;
        Mat tinv_part = Mat::Zero(n, n);
        if (u.cols() > 0) {
            Mat t_r = u.adjoint() * p.t * u;
            tinv_part = p.chibar * u *
                        t_r.partialPivLu().solve(Mat::Identity(u.cols(), u.cols())) *
                        u.adjoint() * p.chibar;
        }
        r.inverse_formula_residual_f = opnorm(finv - (p.chi * hinv * p.chi + tinv_part));
    } else {
        Mat kh = kernel_basis(p.h, sv_threshold);
        Mat kf = kernel_basis(f, sv_threshold);
        r.dim_ker_h = kh.cols();
        r.dim_ker_f = kf.cols();
        r.consistent = r.consistent && (r.dim_ker_h == r.dim_ker_f);
        double res = 0.0, rt = 0.0;
        for (int j = 0; j < kh.cols(); ++j) {
            Vec u0 = kh.col(j);
            res = std::max(res, (f * (p.chi * u0)).norm());
            rt = std::max(rt, (q * (p.chi * u0) - u0).norm());
        }
        for (int j = 0; j < kf.cols(); ++j) {
            Vec v0 = kf.col(j);
            res = std::max(res, (p.h * (q * v0)).norm());
            rt = std::max(rt, (p.chi * (q * v0) - v0).norm());
        }
        r.kernel_map_residual = res;
        r.kernel_roundtrip_residual = rt;
    }
    return r;
}

} // namespace sbrg
