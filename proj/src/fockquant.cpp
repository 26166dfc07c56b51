#include "duplexem/fockquant.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace duplexem {

ModeLadder make_ladder(int dim) {
    if (dim < 2) throw DomainError("make_ladder: dim must be >= 2");
    Mat a = Mat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return {{dim, a, OpLabel::annihilate}, {dim, a.adjoint(), OpLabel::create}};
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }
Mat anticommutator(const Mat& a, const Mat& b) { return a * b + b * a; }

double restricted_max_diff(const Mat& a, const Mat& b, const std::vector<int>& keep) {
    double m = 0.0;
    for (int i : keep)
        for (int j : keep) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

std::vector<int> safe_indices(int dim) {
    std::vector<int> v;
    for (int i = 0; i + 1 < dim; ++i) v.push_back(i);
    return v;
}

std::vector<int> safe_indices_tensor(int dim) {
    std::vector<int> v;
    for (int i = 0; i + 1 < dim; ++i)
        for (int j = 0; j + 1 < dim; ++j) v.push_back(i * dim + j);
    return v;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

static std::vector<ModeLadder> phased_ladders(int n_modes, int dim, const std::function<double(int)>& rate, double x) {
    const ModeLadder bare = make_ladder(dim);
    std::vector<ModeLadder> out;
    for (int a = 1; a <= n_modes; ++a) {
        const cplx ph = std::exp(cplx(0, -rate(a) * x));
        out.push_back({{dim, bare.a.m * ph, OpLabel::annihilate}, {dim, bare.adag.m * std::conj(ph), OpLabel::create}});
    }
    return out;
}

std::vector<ModeLadder> time_local_operators(const CavityModel& model, int dim, double t) {
    return phased_ladders(model.n_modes, dim, [&](int a) { return model.omega(a); }, t);
}

std::vector<ModeLadder> space_local_operators(const CavityModel& model, int dim, double z) {
    if (!(z >= 0.0 && z <= model.length)) throw DomainError("space_local_operators: z outside [0, L]");
    return phased_ladders(model.n_modes, dim, [&](int a) { return model.wavenum(a); }, z);
}

static FockOperator oscillator_hamiltonian(double quantum, int dim) {
    const ModeLadder l = make_ladder(dim);
    Mat h = quantum * (l.adag.m * l.a.m + 0.5 * Mat::Identity(dim, dim));
    return {dim, h, OpLabel::hamiltonian};
}

FockOperator time_local_hamiltonian(const CavityModel& model, int alpha, int dim) {
    return oscillator_hamiltonian(model.k.hbar * model.omega(alpha), dim);
}

FockOperator space_local_hamiltonian(const CavityModel& model, int alpha, int dim) {
    return oscillator_hamiltonian(model.k.lambda0 * model.omega(alpha), dim);
}

std::vector<double> hermitian_spectrum(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("hermitian_spectrum: eigen solve failed");
    std::vector<double> v(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) v[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return v;
}

static double scalar_dev(const Mat& m, const std::vector<int>& keep) {
    cplx mean = 0.0;
    for (int i : keep) mean += m(i, i);
    mean /= static_cast<double>(keep.size());
    return restricted_max_diff(m, mean * Mat::Identity(m.rows(), m.cols()), keep);
}

SpacetimeReport spacetime_local_operators(const CavityModel& model, int alpha, int dim, double z, double t) {
    if (dim < 2) throw DomainError("spacetime_local_operators: dim must be >= 2");
    if (!(z >= 0.0 && z <= model.length)) throw DomainError("spacetime_local_operators: z outside [0, L]");
    if (!(t >= 0.0 && t <= model.period())) throw DomainError("spacetime_local_operators: t outside [0, T]");
    const double hbar = model.k.hbar, lam = model.k.lambda0;
    const double w = model.omega(alpha), mm = model.m(alpha);
    SpacetimeReport r;
    r.dim = dim;
    r.degenerate = dim < 3;

    const ModeLadder sz = space_local_operators(model, dim, z)[static_cast<std::size_t>(alpha - 1)];
    const ModeLadder st = time_local_operators(model, dim, t)[static_cast<std::size_t>(alpha - 1)];
    const cplx I(0, 1);
    const Mat qz = std::sqrt(lam / (2 * mm * w)) * (sz.adag.m + sz.a.m);
    const Mat pz = I * std::sqrt(lam * mm * w / 2) * (sz.adag.m - sz.a.m);
    const Mat qt = std::sqrt(hbar / (2 * mm * w)) * (st.adag.m + st.a.m);
    const Mat pt = I * std::sqrt(hbar * mm * w / 2) * (st.adag.m - st.a.m);
    const Mat id = Mat::Identity(dim, dim);

    r.q = kron(qz, qt);
    r.p = kron(pz, pt);
    const Mat qpz = kron(qz * pz, id), pqz = kron(pz * qz, id);
    const Mat qpt = kron(id, qt * pt), pqt = kron(id, pt * qt);
    // ordering variants; for a single mode the alpha<->beta swap leaves them unchanged
    r.g[0] = I * (hbar * qpz + lam * qpt);
    r.g[1] = -I * (hbar * pqz + lam * pqt);
    r.g[2] = r.g[0];
    r.g[3] = r.g[1];
    r.g_sym = 0.25 * (r.g[0] + r.g[1] + r.g[2] + r.g[3]);

    const std::vector<int> keep = safe_indices_tensor(dim);
    const int n = dim * dim;
    const Mat idn = Mat::Identity(n, n);
    r.g_sym_err = restricted_max_diff(r.g_sym, -hbar * lam * idn, keep);

    // literal reading: g2 = -g1, g4 = -g3
    const Mat g1_lit = I * (hbar * pqz + lam * pqt);
    const Mat g2_lit = -I * (hbar * pqz + lam * pqt);
    const Mat lit = 0.25 * (g1_lit + g2_lit + g1_lit + g2_lit);
    r.g_literal_sum = lit.cwiseAbs().maxCoeff();

    const double norm = 1.0 / std::sqrt(2 * hbar * lam * mm * w);
    r.a = norm * (mm * w * r.q + I * r.p);
    r.adag = norm * (mm * w * r.q - I * r.p);
    r.comm = commutator(r.a, r.adag);
    r.comm_dist_identity = restricted_max_diff(r.comm, idn, keep);
    r.comm_dist_minus_i = restricted_max_diff(r.comm, -I * idn, keep);
    // [p, q] = i g, g = -hbar lambda0  =>  [q, p] = i hbar lambda0  =>  [a, a^+] = -i [q, p]/(hbar lambda0)
    const cplx pq = I * (-hbar * lam);
    r.comm_via_g = -I * (-pq) / (hbar * lam);
    r.pq_scalar_dev = scalar_dev(commutator(r.p, r.q), keep);
    return r;
}

OperatorField assemble_field_operators(const CavityModel& model, Scheme scheme, int dim, double z, double t) {
    OperatorField f;
    f.scheme = scheme;
    const cplx I(0, 1);
    const double V = model.volume, T = model.period();
    const double eps0 = model.k.eps0, mu0 = model.k.mu0;
    if (scheme == Scheme::time_local) {
        f.dim = dim;
        const auto lad = time_local_operators(model, dim, t);
        for (int a = 1; a <= model.n_modes; ++a) {
            const auto& l = lad[static_cast<std::size_t>(a - 1)];
            const double w = model.omega(a), kk = model.wavenum(a), hb = model.k.hbar;
            f.e.push_back({dim, std::sqrt(hb * w / (V * eps0)) * std::sin(kk * z) * (l.adag.m + l.a.m), OpLabel::custom});
            f.h.push_back({dim, I * std::sqrt(hb * w / (V * mu0)) * std::cos(kk * z) * (l.adag.m - l.a.m), OpLabel::custom});
        }
    } else if (scheme == Scheme::space_local) {
        f.dim = dim;
        const auto lad = space_local_operators(model, dim, z);
        for (int a = 1; a <= model.n_modes; ++a) {
            const auto& l = lad[static_cast<std::size_t>(a - 1)];
            const double w = model.omega(a), lam = model.k.lambda0;
            f.e.push_back({dim, I * std::sqrt(lam * w / (T * eps0)) * std::sin(w * t) * (l.adag.m - l.a.m), OpLabel::custom});
            f.h.push_back({dim, -std::sqrt(lam * w / (T * mu0)) * std::cos(w * t) * (l.adag.m + l.a.m), OpLabel::custom});
        }
    } else {
        f.dim = dim * dim;
        for (int a = 1; a <= model.n_modes; ++a) {
            const SpacetimeReport r = spacetime_local_operators(model, a, dim, z, t);
            const double w = model.omega(a), mm = model.m(a);
            const double ae = std::sqrt(2 * w * w * mm / (eps0 * V * T));
            const double ah = std::sqrt(2 * w * w * mm / (mu0 * V * T));
            f.e.push_back({dim * dim, ae * r.q, OpLabel::custom});
            f.h.push_back({dim * dim, ah / (mm * w) * r.p, OpLabel::custom});
        }
    }
    return f;
}

OperatorField assemble_second_field_operators(const CavityModel& model, int dim, double z, double t) {
    OperatorField f;
    f.scheme = Scheme::time_local;
    f.dim = dim;
    const cplx I(0, 1);
    const auto lad = time_local_operators(model, dim, t);
    for (int a = 1; a <= model.n_modes; ++a) {
        const auto& l = lad[static_cast<std::size_t>(a - 1)];
        const Mat app = -l.a.m, appd = -l.adag.m;
        const double w = model.omega(a), kk = model.wavenum(a), hb = model.k.hbar;
        f.e.push_back({dim, std::sqrt(hb * w / (model.volume * model.k.eps0)) * std::sin(kk * z) * (appd + app),
                       OpLabel::custom});
        f.h.push_back({dim, -I * std::sqrt(hb * w / (model.volume * model.k.mu0)) * std::cos(kk * z) * (appd - app),
                       OpLabel::custom});
    }
    return f;
}

cplx vacuum_expectation(const Mat& op) { return op(0, 0); }

double vacuum_variance(const std::vector<FockOperator>& ops) {
    double s = 0.0;
    for (const auto& o : ops) s += ((o.m * o.m)(0, 0)).real();
    return s;
}

double heisenberg_residual(const CavityModel& model, int alpha, int dim, double t, double h) {
    const auto at = [&](double tt) { return time_local_operators(model, dim, tt)[static_cast<std::size_t>(alpha - 1)].a.m; };
    const Mat fd = (at(t + h) - at(t - h)) / (2 * h);
    const Mat H = time_local_hamiltonian(model, alpha, dim).m;
    const Mat heis = commutator(at(t), H) / cplx(0, model.k.hbar);
    return restricted_max_diff(fd, heis, safe_indices(dim));
}

TrigAnsatzReport trigonometric_ansatz_check(int dim, double omega, const std::vector<double>& times, double tol) {
    const ModeLadder l = make_ladder(dim);
    const std::vector<int> keep = safe_indices(dim);
    const cplx I(0, 1);
    const Mat H = omega * (l.adag.m * l.a.m + 0.5 * Mat::Identity(dim, dim));  // hbar = 1
    const Mat c0 = commutator(l.a.m, l.adag.m);
    TrigAnsatzReport r;
    double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
    for (double t : times) {
        const double c = std::cos(omega * t), s = std::sin(omega * t);
        const cplx em = std::exp(-I * omega * t);
        // exponential ansatz
        const Mat ae = l.a.m * em, aed = l.adag.m * std::conj(em);
        const Mat d_ae = -I * omega * ae, d_aed = I * omega * aed;
        r.exp_maxwell_residual =
            std::max(r.exp_maxwell_residual, restricted_max_diff(d_aed + d_ae, I * omega * (aed - ae), keep));
        r.exp_heisenberg_residual =
            std::max(r.exp_heisenberg_residual, restricted_max_diff(d_ae, commutator(ae, H) / I, keep));
        // trigonometric ansatz
        const Mat at = l.a.m * c, atd = l.adag.m * c;
        const Mat d_at = -omega * s * l.a.m, d_atd = -omega * s * l.adag.m;
        r.trig_maxwell_residual =
            std::max(r.trig_maxwell_residual, restricted_max_diff(d_atd + d_at, I * omega * (atd - at), keep));
        r.trig_heisenberg_residual =
            std::max(r.trig_heisenberg_residual, restricted_max_diff(d_at, commutator(at, H) / I, keep));
        r.commutator_drift = std::max(r.commutator_drift, restricted_max_diff(commutator(at, atd), c0, keep));
        if (std::abs(c) > 1e-8) {
            tmin = std::min(tmin, s / c);
            tmax = std::max(tmax, s / c);
        }
    }
    r.required_scalar_spread = times.empty() ? 0.0 : tmax - tmin;
    Eigen::FullPivLU<Mat> lu(l.adag.m - l.a.m);
    if (lu.isInvertible()) {
        const Mat lhs = lu.solve(l.adag.m + l.a.m);
        r.lhs_scalar_dev = scalar_dev(lhs, keep);
    } else {
        r.lhs_scalar_dev = std::numeric_limits<double>::quiet_NaN();
    }
    r.rejected = r.trig_maxwell_residual > tol && r.exp_maxwell_residual <= tol;
    return r;
}

}  // namespace duplexem
