#include "sos/surface_tension.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace sos {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kQuarter = kPi / 4.0;

// One-column step generating function S(s) = sum_{xi in Z} e^{-beta|xi| + s xi}
// (without the e^{-beta} column cost, which enters Lambda as the -beta term)
// and its first three derivatives, via geometric sums, valid for |s| < beta.
struct StepSums {
    double S, S1, S2, S3;
};

StepSums step_sums(double s, double beta) {
    const double A = std::exp(s - beta);
    const double B = std::exp(-s - beta);
    const double a1 = 1.0 - A, b1 = 1.0 - B;
    StepSums r;
    r.S = 1.0 + A / a1 + B / b1;
    r.S1 = A / (a1 * a1) - B / (b1 * b1);
    r.S2 = A * (1.0 + A) / (a1 * a1 * a1) + B * (1.0 + B) / (b1 * b1 * b1);
    r.S3 = A * (1.0 + 4.0 * A + A * A) / (a1 * a1 * a1 * a1)
         - B * (1.0 + 4.0 * B + B * B) / (b1 * b1 * b1 * b1);
    return r;
}

double lambda_of(double s, double beta) {
    return -beta + std::log(step_sums(s, beta).S);
}

double lambda_p(double s, double beta) {
    const StepSums r = step_sums(s, beta);
    return r.S1 / r.S;
}

double lambda_pp(double s, double beta) {
    const StepSums r = step_sums(s, beta);
    const double l1 = r.S1 / r.S;
    return r.S2 / r.S - l1 * l1;
}

double lambda_ppp(double s, double beta) {
    const StepSums r = step_sums(s, beta);
    const double l1 = r.S1 / r.S;
    return r.S3 / r.S - 3.0 * (r.S2 / r.S) * l1 + 2.0 * l1 * l1 * l1;
}

// solve Lambda'(s*) = u; Lambda' is strictly increasing on (-beta, beta)
double solve_s_star(double u, double beta) {
    double lo = 0.0, hi = beta;
    if (u < 0.0) { lo = -beta; hi = 0.0; }
    double s = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = lambda_p(s, beta) - u;
        if (f < 0.0) lo = s; else hi = s;
        const double d = lambda_pp(s, beta);
        double sn = s - f / d;
        if (!(sn > lo && sn < hi)) sn = 0.5 * (lo + hi);
        if (std::abs(sn - s) < 1e-16 * (1.0 + std::abs(s))) { s = sn; break; }
        s = sn;
    }
    return s;
}

struct RawEval {
    double tau, dtau, stiff, lpp;
};

// raw directed-walk tau / tau' / (tau + tau'') at angle t in [0, pi/4]
RawEval raw_eval(double t, double beta) {
    const double u = std::tan(t);
    const double c = std::cos(t);
    const double s = solve_s_star(u, beta);
    const double I = s * u - lambda_of(s, beta);
    RawEval r;
    r.lpp = lambda_pp(s, beta);
    r.tau = c * I / beta;
    r.dtau = (-std::sin(t) * I + s / c) / beta;
    r.stiff = 1.0 / (beta * r.lpp * c * c * c);
    return r;
}

// d/dtheta of the raw stiffness 1/(beta Lambda''(s*) cos^3 t):
//   ds*/dt = sec^2 t / Lambda''
//   stiff' = stiff * (3 tan t - Lambda''' ds*/dt / Lambda'')
double raw_stiff_prime(double t, double beta) {
    const double u = std::tan(t);
    const double s = solve_s_star(u, beta);
    const double lpp = lambda_pp(s, beta);
    const double lppp = lambda_ppp(s, beta);
    const double sec2 = 1.0 + u * u;
    const double stiff = 1.0 / (beta * lpp * std::pow(std::cos(t), 3));
    return stiff * (3.0 * u - lppp * sec2 / (lpp * lpp));
}

// small dense linear solve (partial pivoting) for the correction coefficients
bool solve_linear(int n, double* A /* n x n row-major */, double* b) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
        if (A[piv * n + col] == 0.0) return false;
        if (piv != col) {
            for (int k = 0; k < n; ++k) std::swap(A[col * n + k], A[piv * n + k]);
            std::swap(b[col], b[piv]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = A[r * n + col] / A[col * n + col];
            for (int k = col; k < n; ++k) A[r * n + k] -= f * A[col * n + k];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[r];
        for (int k = r + 1; k < n; ++k) acc -= A[r * n + k] * b[k];
        b[r] = acc / A[r * n + r];
    }
    return true;
}

double falling(int k, int m) {
    double c = 1;
    for (int j = 0; j < m; ++j) c *= (k - j);
    return c;
}

} // namespace

// The raw directed-walk tension is not exactly symmetric under
// theta -> pi/2 - theta at finite beta (tau'(pi/4) != 0), while the extension
// outside [0, pi/4] is defined by that symmetry.  To keep the extension C^2
// (no corner on the Wulff boundary at the diagonal) we add a small polynomial
// correction h(theta) = sum_{k=4}^{9} a_k theta^k on the fundamental domain:
//   h(q) = 0, h'(q) = -tau_raw'(q), h'''(q) = -tau_raw'''(q)   (q = pi/4)
// with the coefficients minimizing int_0^q (h'''')^2.  The quartic leading
// order leaves tau and its first three derivatives at theta = 0 untouched, and
// tau(pi/4) keeps the raw Legendre value.
SurfaceTensionModel SurfaceTensionModel::directed_walk(double beta) {
    if (!(beta >= 1.0))
        throw std::invalid_argument("SurfaceTensionModel::directed_walk: beta must be >= 1");
    SurfaceTensionModel m(beta, TauSource::DirectedWalk);

    const double q = kQuarter;
    const RawEval rq = raw_eval(q, beta);
    // tau''' = stiff' - tau'
    const double g1 = rq.dtau;
    const double g3 = raw_stiff_prime(q, beta) - rq.dtau;

    // KKT system: minimize a^T Q a subject to C a = d  (3 constraints)
    constexpr int kN = 6; // powers 4..9
    std::array<double, 9 * 9> K{};
    std::array<double, 9> rhs{};
    auto at = [&](int r, int c) -> double& { return K[static_cast<std::size_t>(r * 9 + c)]; };
    for (int i = 0; i < kN; ++i) {
        const int k = 4 + i;
        for (int j = 0; j < kN; ++j) {
            const int l = 4 + j;
            at(i, j) = 2.0 * falling(k, 4) * falling(l, 4) *
                       std::pow(q, k + l - 7) / (k + l - 7);
        }
    }
    const int cons_order[3] = {0, 1, 3}; // h, h', h''' at q
    for (int c = 0; c < 3; ++c) {
        const int mder = cons_order[c];
        for (int i = 0; i < kN; ++i) {
            const int k = 4 + i;
            const double v = falling(k, mder) * std::pow(q, k - mder);
            at(i, kN + c) = v;
            at(kN + c, i) = v;
        }
    }
    rhs[kN + 0] = 0.0;
    rhs[kN + 1] = -g1;
    rhs[kN + 2] = -g3;
    if (!solve_linear(9, K.data(), rhs.data()))
        throw std::runtime_error("SurfaceTensionModel: singular symmetrization system");
    for (int i = 0; i < kN; ++i) m.corr_[static_cast<std::size_t>(i)] = rhs[static_cast<std::size_t>(i)];
    return m;
}

SurfaceTensionModel SurfaceTensionModel::square_limit(double beta) {
    return SurfaceTensionModel(beta, TauSource::SquareLimit);
}

SurfaceTensionModel SurfaceTensionModel::from_table(double beta, std::vector<double> theta,
                                                   std::vector<double> tau) {
    if (theta.size() != tau.size() || theta.size() < 4)
        throw std::invalid_argument("SurfaceTensionModel::from_table: need >= 4 matching knots");
    if (std::abs(theta.front()) > 1e-12 || std::abs(theta.back() - kQuarter) > 1e-9)
        throw std::invalid_argument("SurfaceTensionModel::from_table: knots must span [0, pi/4]");
    for (std::size_t i = 1; i < theta.size(); ++i)
        if (!(theta[i] > theta[i - 1]))
            throw std::invalid_argument("SurfaceTensionModel::from_table: knots must be increasing");
    for (double v : tau)
        if (!(v > 0))
            throw std::invalid_argument("SurfaceTensionModel::from_table: tau must be positive");

    SurfaceTensionModel m(beta, TauSource::Table);
    m.knots_x_ = std::move(theta);
    m.knots_y_ = std::move(tau);
    // natural cubic spline second derivatives (Thomas algorithm)
    const std::size_t n = m.knots_x_.size();
    std::vector<double> a(n, 0), b(n, 0), c(n, 0), d(n, 0);
    b[0] = b[n - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = m.knots_x_[i] - m.knots_x_[i - 1];
        const double h1 = m.knots_x_[i + 1] - m.knots_x_[i];
        a[i] = h0 / 6.0;
        b[i] = (h0 + h1) / 3.0;
        c[i] = h1 / 6.0;
        d[i] = (m.knots_y_[i + 1] - m.knots_y_[i]) / h1 -
               (m.knots_y_[i] - m.knots_y_[i - 1]) / h0;
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double f = a[i] / b[i - 1];
        b[i] -= f * c[i - 1];
        d[i] -= f * d[i - 1];
    }
    m.knots_m_.assign(n, 0.0);
    m.knots_m_[n - 1] = d[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        m.knots_m_[i] = (d[i] - c[i] * m.knots_m_[i + 1]) / b[i];
    return m;
}

double SurfaceTensionModel::corr(double t, int deriv) const {
    double acc = 0;
    for (int i = 0; i < 6; ++i) {
        const int k = 4 + i;
        if (k - deriv < 0) continue;
        acc += corr_[static_cast<std::size_t>(i)] * falling(k, deriv) * std::pow(t, k - deriv);
    }
    return acc;
}

SurfaceTensionModel::Eval SurfaceTensionModel::eval_folded(double t) const {
    switch (source_) {
        case TauSource::DirectedWalk: {
            const RawEval r = raw_eval(t, beta_);
            return {r.tau + corr(t, 0), r.dtau + corr(t, 1),
                    r.stiff + corr(t, 0) + corr(t, 2)};
        }
        case TauSource::SquareLimit:
            return {std::cos(t) + std::sin(t), std::cos(t) - std::sin(t), 0.0};
        case TauSource::Table: {
            // locate interval
            const auto it = std::upper_bound(knots_x_.begin(), knots_x_.end(), t);
            std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                1, std::min<std::ptrdiff_t>(it - knots_x_.begin(),
                                            static_cast<std::ptrdiff_t>(knots_x_.size()) - 1)));
            const double x0 = knots_x_[i - 1], x1 = knots_x_[i];
            const double y0 = knots_y_[i - 1], y1 = knots_y_[i];
            const double m0 = knots_m_[i - 1], m1 = knots_m_[i];
            const double h = x1 - x0;
            const double A = (x1 - t) / h, B = (t - x0) / h;
            Eval e;
            e.tau = A * y0 + B * y1 +
                    ((A * A * A - A) * m0 + (B * B * B - B) * m1) * h * h / 6.0;
            e.dtau = (y1 - y0) / h +
                     (-(3.0 * A * A - 1.0) * m0 + (3.0 * B * B - 1.0) * m1) * h / 6.0;
            const double tpp = A * m0 + B * m1;
            e.stiff = e.tau + tpp;
            return e;
        }
    }
    throw std::logic_error("SurfaceTensionModel: bad source");
}

SurfaceTensionModel::Folded SurfaceTensionModel::fold(double theta) {
    constexpr double kHalf = kPi / 2.0;
    double t = std::fmod(theta, kHalf);
    if (t < 0) t += kHalf;
    if (t > kQuarter) return {kHalf - t, -1.0};
    return {t, 1.0};
}

double SurfaceTensionModel::tau(double theta) const {
    return eval_folded(fold(theta).t).tau;
}

double SurfaceTensionModel::tau_prime(double theta) const {
    const Folded f = fold(theta);
    return f.sign * eval_folded(f.t).dtau;
}

double SurfaceTensionModel::stiffness(double theta) const {
    return eval_folded(fold(theta).t).stiff;
}

double SurfaceTensionModel::lambda_pp_at(double theta) const {
    if (source_ != TauSource::DirectedWalk)
        throw std::logic_error("lambda_pp_at: only defined for the directed-walk model");
    return raw_eval(fold(theta).t, beta_).lpp;
}

} // namespace sos
