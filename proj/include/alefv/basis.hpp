#ifndef ALEFV_BASIS_HPP
#define ALEFV_BASIS_HPP

#include <vector>

#include <Eigen/Dense>

#include "alefv/core.hpp"
#include "alefv/quadrature.hpp"

namespace alefv {

namespace detail {

/// Dense bivariate polynomial sum c[i][j] xi^i eta^j, used only at setup time
/// to build the modal basis in closed form.
struct Poly2 {
    int n = 1; // coefficient grid size (max exponent + 1)
    std::vector<double> c;

    explicit Poly2(int size = 1) : n(size), c(static_cast<std::size_t>(size * size), 0.0) {}

    double& at(int i, int j) { return c[static_cast<std::size_t>(i * n + j)]; }
    double at(int i, int j) const { return c[static_cast<std::size_t>(i * n + j)]; }

    static Poly2 constant(double v, int size) {
        Poly2 p(size);
        p.at(0, 0) = v;
        return p;
    }

    Poly2& operator+=(const Poly2& o) {
        for (int i = 0; i < o.n; ++i)
            for (int j = 0; j < o.n; ++j) at(i, j) += o.at(i, j);
        return *this;
    }

    Poly2& operator*=(double s) {
        for (double& v : c) v *= s;
        return *this;
    }

    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 r(a.n);
        for (int i = 0; i < a.n; ++i)
            for (int j = 0; j < a.n; ++j) {
                if (a.at(i, j) == 0.0) continue;
                for (int k = 0; i + k < a.n; ++k)
                    for (int l = 0; j + l < a.n; ++l)
                        r.at(i + k, j + l) += a.at(i, j) * b.at(k, l);
            }
        return r;
    }

    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator*(double s, Poly2 a) { return a *= s; }

    Poly2 d_xi() const {
        Poly2 r(n);
        for (int i = 1; i < n; ++i)
            for (int j = 0; j < n; ++j) r.at(i - 1, j) = i * at(i, j);
        return r;
    }

    Poly2 d_eta() const {
        Poly2 r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 1; j < n; ++j) r.at(i, j - 1) = j * at(i, j);
        return r;
    }

    double eval(double xi, double eta) const {
        // Horner in xi with inner Horner in eta.
        double r = 0.0;
        for (int i = n - 1; i >= 0; --i) {
            double row = 0.0;
            for (int j = n - 1; j >= 0; --j) row = row * eta + at(i, j);
            r = r * xi + row;
        }
        return r;
    }
};

/// Jacobi polynomial P_q^{(alpha,0)} of the degree-1 polynomial argument b,
/// expanded in (xi,eta) via the three-term recurrence.
inline Poly2 jacobi_poly(int q, int alpha, const Poly2& b, int size) {
    Poly2 p0 = Poly2::constant(1.0, size);
    if (q == 0) return p0;
    // P_1^{(a,0)}(x) = (a + 1 + (a + 2) (x - 1)) / 2... written as ((a+2)x + a)/2
    Poly2 p1 = 0.5 * ((alpha + 2.0) * b + Poly2::constant(alpha, size));
    for (int m = 2; m <= q; ++m) {
        double a = alpha;
        double c1 = 2.0 * m * (m + a) * (2.0 * m + a - 2.0);
        double c2 = (2.0 * m + a - 1.0) * (2.0 * m + a) * (2.0 * m + a - 2.0);
        double c3 = (2.0 * m + a - 1.0) * a * a;
        double c4 = 2.0 * (m + a - 1.0) * (m - 1.0) * (2.0 * m + a);
        Poly2 p2 = (c2 / c1) * (b * p1) + (c3 / c1) * p1 + (-c4 / c1) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// Homogenized Legendre L_p(u,w) = w^p P_p(u/w): the singularity-free form of
/// the collapsed-coordinate factor of the Dubiner basis.
inline Poly2 homogenized_legendre(int p, const Poly2& u, const Poly2& w, int size) {
    Poly2 l0 = Poly2::constant(1.0, size);
    if (p == 0) return l0;
    Poly2 l1 = u;
    Poly2 w2 = w * w;
    for (int m = 1; m < p; ++m) {
        Poly2 l2 = ((2.0 * m + 1.0) / (m + 1.0)) * (u * l1) + (-(double)m / (m + 1.0)) * (w2 * l0);
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

} // namespace detail

/// Orthogonal Dubiner-type modal basis on the reference triangle.
///
/// The first function is the constant 1; all higher modes have zero mean over
/// T_e, so the constant coefficient of an expansion is exactly the cell
/// average. Derivatives of any order are available in closed form.
class ModalBasis {
  public:
    explicit ModalBasis(int degree) : m_(degree), count_((degree + 1) * (degree + 2) / 2) {
        int size = m_ + 1;
        detail::Poly2 u(size), w(size), b(size);
        u.at(1, 0) = 2.0; u.at(0, 1) = 1.0; u.at(0, 0) = -1.0; // 2 xi + eta - 1
        w.at(0, 1) = -1.0; w.at(0, 0) = 1.0;                   // 1 - eta
        b.at(0, 1) = 2.0; b.at(0, 0) = -1.0;                   // 2 eta - 1

        // Order by total degree, then by the index p of the xi-direction mode.
        polys_.reserve(static_cast<std::size_t>(count_));
        for (int d = 0; d <= m_; ++d) {
            for (int p = d; p >= 0; --p) {
                int q = d - p;
                detail::Poly2 lp = detail::homogenized_legendre(p, u, w, size);
                detail::Poly2 jq = detail::jacobi_poly(q, 2 * p + 1, b, size);
                polys_.push_back(lp * jq);
            }
        }

        // All partial derivatives up to total order M.
        derivs_.assign(polys_.size(), {});
        for (std::size_t l = 0; l < polys_.size(); ++l) {
            auto& tab = derivs_[l];
            tab.resize(static_cast<std::size_t>((m_ + 1) * (m_ + 1)));
            tab[0] = polys_[l];
            for (int a = 0; a <= m_; ++a) {
                for (int bb = 0; bb <= m_; ++bb) {
                    if (a + bb == 0 || a + bb > m_) continue;
                    const detail::Poly2& src = (a > 0) ? tab[static_cast<std::size_t>((a - 1) * (m_ + 1) + bb)]
                                                       : tab[static_cast<std::size_t>(bb - 1)];
                    tab[static_cast<std::size_t>(a * (m_ + 1) + bb)] = (a > 0) ? src.d_xi() : src.d_eta();
                }
            }
        }
    }

    int degree() const { return m_; }
    int count() const { return count_; }

    /// Value of the (alpha,beta) partial derivative of basis function l
    /// (1-based index as in the reconstruction formulas).
    double eval(int l, double xi, double eta, int alpha = 0, int beta = 0) const {
        check_index(l);
        if (alpha + beta > m_) return 0.0;
        return derivs_[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(alpha * (m_ + 1) + beta)]
            .eval(xi, eta);
    }

    /// Values of all basis functions at one point.
    void eval_all(double xi, double eta, double* out) const {
        for (int l = 0; l < count_; ++l) out[l] = polys_[static_cast<std::size_t>(l)].eval(xi, eta);
    }

    /// Values of one partial derivative of all basis functions at one point.
    void eval_all_deriv(double xi, double eta, int alpha, int beta, double* out) const {
        if (alpha + beta > m_) {
            for (int l = 0; l < count_; ++l) out[l] = 0.0;
            return;
        }
        for (int l = 0; l < count_; ++l)
            out[l] = derivs_[static_cast<std::size_t>(l)][static_cast<std::size_t>(alpha * (m_ + 1) + beta)]
                         .eval(xi, eta);
    }

    /// Oscillation indicator matrix: sum over 1 <= alpha+beta <= M of the
    /// integrals of products of derivatives over T_e. Symmetric PSD with a
    /// zero first row/column (the constant mode carries no oscillation).
    Eigen::MatrixXd oscillation_matrix() const {
        Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(count_, count_);
        TriangleRule rule = triangle_rule(2 * m_);
        std::vector<double> va(static_cast<std::size_t>(count_));
        for (int a = 0; a <= m_; ++a) {
            for (int b = 0; b <= m_; ++b) {
                int ord = a + b;
                if (ord < 1 || ord > m_) continue;
                for (int g = 0; g < rule.size(); ++g) {
                    for (int l = 0; l < count_; ++l)
                        va[static_cast<std::size_t>(l)] = eval(l + 1, rule.points[g].x, rule.points[g].y, a, b);
                    for (int l = 0; l < count_; ++l)
                        for (int m = 0; m < count_; ++m)
                            sigma(l, m) += rule.weights[g] * va[static_cast<std::size_t>(l)] * va[static_cast<std::size_t>(m)];
                }
            }
        }
        return sigma;
    }

  private:
    void check_index(int l) const {
        if (l < 1 || l > count_) throw SolverError("modal basis index out of range: " + std::to_string(l));
    }

    int m_;
    int count_;
    std::vector<detail::Poly2> polys_;
    std::vector<std::vector<detail::Poly2>> derivs_;
};

// ---------------------------------------------------------------------------
// Space-time nodal basis
// ---------------------------------------------------------------------------

/// Nodal Lagrange basis on T_e x [0,1]: the degree-M principal lattice in
/// space tensorized with M+1 Gauss-Lobatto points in relative time tau.
/// Node l = n*Ms + m pairs spatial node m with time level n; the tau=0 layer
/// (n = 0) holds the degrees of freedom known from the reconstruction.
///
/// The tensor structure makes the predictor solve decouple into independent
/// (M+1)-sized systems in time, one per spatial node; the tables below are
/// everything the predictor and corrector need.
class SpaceTimeBasis {
  public:
    explicit SpaceTimeBasis(int degree) : modal_(degree), m_(degree) {
        ms_ = modal_.count();
        nt_ = m_ + 1;

        // Spatial principal lattice, vertices first among its points in the
        // order (0,0),(1,0),(0,1) so that element vertices are easy to find.
        if (m_ == 0) {
            lattice_.push_back({1.0 / 3.0, 1.0 / 3.0});
            vertex_node_ = {0, 0, 0};
        } else {
            for (int j = 0; j <= m_; ++j)
                for (int i = 0; i + j <= m_; ++i)
                    lattice_.push_back({static_cast<double>(i) / m_, static_cast<double>(j) / m_});
            auto find = [&](double x, double y) {
                for (std::size_t k = 0; k < lattice_.size(); ++k)
                    if (std::abs(lattice_[k].x - x) < 1e-14 && std::abs(lattice_[k].y - y) < 1e-14)
                        return static_cast<int>(k);
                throw SolverError("lattice vertex lookup failed");
            };
            vertex_node_ = {find(0.0, 0.0), find(1.0, 0.0), find(0.0, 1.0)};
        }

        // Lagrange coefficients in the modal basis from the Vandermonde
        // matrix V[m][l] = psi_l(node_m): coeff = V^{-T}.
        Eigen::MatrixXd v(ms_, ms_);
        for (int k = 0; k < ms_; ++k)
            for (int l = 0; l < ms_; ++l) v(k, l) = modal_.eval(l + 1, lattice_[static_cast<std::size_t>(k)].x,
                                                                lattice_[static_cast<std::size_t>(k)].y);
        lag_coeff_ = v.inverse().transpose();

        // Time nodes and the 1D Lagrange matrices, integrated exactly.
        Rule1D lob = gauss_lobatto(nt_);
        tau_ = lob.points;
        Rule1D gl = gauss_legendre(std::max(2, m_ + 1)); // exact to degree 2M+1
        kt1_ = Eigen::MatrixXd::Zero(nt_, nt_);
        m1_ = Eigen::MatrixXd::Zero(nt_, nt_);
        tw_.assign(static_cast<std::size_t>(nt_), 0.0);
        for (int g = 0; g < gl.size(); ++g) {
            std::vector<double> val(static_cast<std::size_t>(nt_)), der(static_cast<std::size_t>(nt_));
            for (int n = 0; n < nt_; ++n) {
                val[static_cast<std::size_t>(n)] = lagrange_1d(n, gl.points[g], 0);
                der[static_cast<std::size_t>(n)] = lagrange_1d(n, gl.points[g], 1);
            }
            for (int k = 0; k < nt_; ++k) {
                tw_[static_cast<std::size_t>(k)] += gl.weights[g] * val[static_cast<std::size_t>(k)];
                for (int l = 0; l < nt_; ++l) {
                    kt1_(k, l) += gl.weights[g] * val[static_cast<std::size_t>(k)] * der[static_cast<std::size_t>(l)];
                    m1_(k, l) += gl.weights[g] * val[static_cast<std::size_t>(k)] * val[static_cast<std::size_t>(l)];
                }
            }
        }
        if (nt_ > 1) {
            kt11_solver_.compute(kt1_.block(1, 1, nt_ - 1, nt_ - 1));
            if (!kt11_solver_.isInvertible())
                throw SolverError("space-time basis: singular unknown block of K_tau");
        }

        // Differentiation tables at the lattice nodes.
        dxi_ = Eigen::MatrixXd(ms_, ms_);
        deta_ = Eigen::MatrixXd(ms_, ms_);
        for (int k = 0; k < ms_; ++k)
            for (int mm = 0; mm < ms_; ++mm) {
                dxi_(k, mm) = lagrange_2d(mm, lattice_[static_cast<std::size_t>(k)].x,
                                          lattice_[static_cast<std::size_t>(k)].y, 1, 0);
                deta_(k, mm) = lagrange_2d(mm, lattice_[static_cast<std::size_t>(k)].x,
                                           lattice_[static_cast<std::size_t>(k)].y, 0, 1);
            }
        dtau_ = Eigen::MatrixXd(nt_, nt_);
        for (int k = 0; k < nt_; ++k)
            for (int n = 0; n < nt_; ++n) dtau_(k, n) = lagrange_1d(n, tau_[static_cast<std::size_t>(k)], 1);
    }

    int degree() const { return m_; }
    int space_count() const { return ms_; }          // Ms spatial nodes
    int time_count() const { return nt_; }           // M+1 time levels
    int count() const { return ms_ * nt_; }          // total space-time nodes
    const ModalBasis& modal() const { return modal_; }
    const std::vector<Vec2>& lattice() const { return lattice_; }
    const std::vector<double>& tau_nodes() const { return tau_; }
    int vertex_node(int k) const { return vertex_node_[static_cast<std::size_t>(k)]; }

    /// Spatial Lagrange basis value/derivative at an arbitrary point.
    double lagrange_2d(int m, double xi, double eta, int alpha = 0, int beta = 0) const {
        double r = 0.0;
        for (int l = 0; l < ms_; ++l) r += lag_coeff_(m, l) * modal_.eval(l + 1, xi, eta, alpha, beta);
        return r;
    }

    /// 1D Lagrange basis on the Gauss-Lobatto time nodes (deriv = 0 or 1).
    double lagrange_1d(int n, double t, int deriv = 0) const {
        if (deriv == 0) {
            double r = 1.0;
            for (int j = 0; j < nt_; ++j) {
                if (j == n) continue;
                r *= (t - tau_[static_cast<std::size_t>(j)]) /
                     (tau_[static_cast<std::size_t>(n)] - tau_[static_cast<std::size_t>(j)]);
            }
            return r;
        }
        double r = 0.0;
        for (int k = 0; k < nt_; ++k) {
            if (k == n) continue;
            double term = 1.0 / (tau_[static_cast<std::size_t>(n)] - tau_[static_cast<std::size_t>(k)]);
            for (int j = 0; j < nt_; ++j) {
                if (j == n || j == k) continue;
                term *= (t - tau_[static_cast<std::size_t>(j)]) /
                        (tau_[static_cast<std::size_t>(n)] - tau_[static_cast<std::size_t>(j)]);
            }
            r += term;
        }
        return r;
    }

    /// Full space-time basis function theta_l (l = 0-based node index).
    double theta(int l, double xi, double eta, double t) const {
        int m = l % ms_, n = l / ms_;
        return lagrange_2d(m, xi, eta) * lagrange_1d(n, t);
    }

    /// Solves the Dirichlet-partitioned 1D time system for one spatial node:
    /// given rhs values r_n (n = 1..M rows of the weak form) returns the
    /// unknown coefficients y_n with the tau=0 value y0 fixed.
    /// Rows: sum_l Kt[k][l] y_l = rhs_k for k >= 1.
    void solve_time(const double* rhs, double y0, double* y) const {
        Eigen::VectorXd b(nt_ - 1);
        for (int k = 1; k < nt_; ++k) b(k - 1) = rhs[k] - kt1_(k, 0) * y0;
        Eigen::VectorXd sol = kt11_solver_.solve(b);
        y[0] = y0;
        for (int k = 1; k < nt_; ++k) y[k] = sol(k - 1);
    }

    const Eigen::MatrixXd& kt1() const { return kt1_; }
    const Eigen::MatrixXd& m1() const { return m1_; }
    const Eigen::MatrixXd& dxi() const { return dxi_; }
    const Eigen::MatrixXd& deta() const { return deta_; }
    const Eigen::MatrixXd& dtau() const { return dtau_; }
    /// Integral of the n-th time Lagrange function over [0,1] (exact); these
    /// are the weights of the node-velocity time average.
    double time_weight(int n) const { return tw_[static_cast<std::size_t>(n)]; }

    /// Sample the modal reconstruction at the spatial lattice nodes
    /// (Vandermonde application); coeffs is the length-Ms modal vector.
    void modal_to_nodal(const double* coeffs, double* nodal) const {
        for (int k = 0; k < ms_; ++k) {
            double s = 0.0;
            for (int l = 0; l < ms_; ++l)
                s += coeffs[l] * modal_.eval(l + 1, lattice_[static_cast<std::size_t>(k)].x,
                                             lattice_[static_cast<std::size_t>(k)].y);
            nodal[k] = s;
        }
    }

  private:
    ModalBasis modal_;
    int m_;
    int ms_ = 0;
    int nt_ = 0;
    std::vector<Vec2> lattice_;
    std::array<int, 3> vertex_node_{};
    std::vector<double> tau_;
    std::vector<double> tw_;
    Eigen::MatrixXd lag_coeff_;
    Eigen::MatrixXd kt1_, m1_, dxi_, deta_, dtau_;
    Eigen::FullPivLU<Eigen::MatrixXd> kt11_solver_;
};

} // namespace alefv

#endif
