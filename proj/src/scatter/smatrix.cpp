#include <cmath>
#include <complex>

#include "retcc/constants.hpp"
#include "retcc/errors.hpp"
#include "retcc/scatter.hpp"

namespace retcc {

namespace {

// Riccati-Bessel pair, sin-like j^(x) = x j_l(x) and cos-like n^(x) = -x y_l(x),
// plus derivatives in x
struct RiccatiPair {
    double j, jp, n, np;
};

RiccatiPair riccati(int l, double x) {
    RiccatiPair rb{};
    const double jl = std::sph_bessel(static_cast<unsigned>(l), x);
    const double yl = std::sph_neumann(static_cast<unsigned>(l), x);
    rb.j = x * jl;
    rb.n = -x * yl;
    if (l == 0) {
        rb.jp = std::cos(x);
        rb.np = -std::sin(x);
    } else {
        const double jm = std::sph_bessel(static_cast<unsigned>(l - 1), x);
        const double ym = std::sph_neumann(static_cast<unsigned>(l - 1), x);
        rb.jp = x * jm - l * jl;
        rb.np = -(x * ym - l * yl);
    }
    return rb;
}

// d/dx ln(x k_l(x)) for the decaying modified spherical Bessel k_l, via the
// polynomial recurrence x k_l(x) ~ e^(-x) q_l(1/x)
double decaying_logderiv(int l, double x) {
    const double u = 1.0 / x;
    double q0 = 1.0, q0p = 0.0;          // l = 0
    if (l == 0) return -1.0;
    double q1 = 1.0 + u, q1p = -u * u;   // l = 1
    for (int ll = 1; ll < l; ++ll) {
        const double c = 2.0 * ll + 1.0;
        double q2 = q0 + c * u * q1;
        double q2p = q0p + c * (-u * u * q1 + u * q1p);
        q0 = q1; q0p = q1p;
        q1 = q2; q1p = q2p;
    }
    return -1.0 + q1p / q1;
}

}  // namespace

double SMatrix::unitarity_defect() const {
    if (s.rows() == 0) return 0.0;
    Eigen::MatrixXcd d = s.adjoint() * s - Eigen::MatrixXcd::Identity(s.rows(), s.cols());
    return d.cwiseAbs().maxCoeff();
}

double SMatrix::symmetry_defect() const {
    if (s.rows() == 0) return 0.0;
    Eigen::MatrixXcd d = s - s.transpose();
    return d.cwiseAbs().maxCoeff();
}

SMatrix s_matrix(const Eigen::MatrixXd& y, const ChannelBasis& basis, double mu_u,
                 double e_total, double r_max) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    if (y.rows() != n || y.cols() != n)
        throw ValidationError("s_matrix: log-derivative size mismatch");
    const double wf_mu = constants::wavenumber_factor * mu_u;

    std::vector<std::size_t> open, closed;
    for (std::size_t i = 0; i < basis.size(); ++i)
        (basis.channels[i].internal_energy < e_total ? open : closed).push_back(i);

    SMatrix out;
    out.e_total = e_total;
    out.J = basis.J;
    out.parity = basis.parity;
    out.open = open;
    for (auto i : open) out.open_channels.push_back(basis.channels[i]);
    const auto no = static_cast<Eigen::Index>(open.size());
    if (no == 0) {
        out.s.resize(0, 0);
        return out;  // structured "all closed" result
    }

    // eliminate closed channels with exact decaying boundary conditions
    Eigen::MatrixXd yoo(no, no);
    for (Eigen::Index a = 0; a < no; ++a)
        for (Eigen::Index b = 0; b < no; ++b)
            yoo(a, b) = y(static_cast<Eigen::Index>(open[a]), static_cast<Eigen::Index>(open[b]));
    if (!closed.empty()) {
        const auto nc = static_cast<Eigen::Index>(closed.size());
        Eigen::MatrixXd yoc(no, nc), yco(nc, no), ycc(nc, nc);
        for (Eigen::Index a = 0; a < no; ++a)
            for (Eigen::Index c = 0; c < nc; ++c)
                yoc(a, c) = y(static_cast<Eigen::Index>(open[a]), static_cast<Eigen::Index>(closed[c]));
        for (Eigen::Index c = 0; c < nc; ++c)
            for (Eigen::Index a = 0; a < no; ++a)
                yco(c, a) = y(static_cast<Eigen::Index>(closed[c]), static_cast<Eigen::Index>(open[a]));
        for (Eigen::Index c = 0; c < nc; ++c)
            for (Eigen::Index d = 0; d < nc; ++d)
                ycc(c, d) = y(static_cast<Eigen::Index>(closed[c]), static_cast<Eigen::Index>(closed[d]));
        Eigen::MatrixXd bc = -ycc;
        for (Eigen::Index c = 0; c < nc; ++c) {
            const auto& ch = basis.channels[closed[c]];
            const double kappa = std::sqrt(wf_mu * (ch.internal_energy - e_total));
            bc(c, c) += kappa * decaying_logderiv(ch.l, kappa * r_max);
        }
        yoo += yoc * bc.partialPivLu().solve(yco);
    }

    // flux-normalized free solutions
    Eigen::ArrayXd jv(no), jpv(no), nv(no), npv(no);
    for (Eigen::Index a = 0; a < no; ++a) {
        const auto& ch = basis.channels[open[a]];
        const double k = std::sqrt(wf_mu * (e_total - ch.internal_energy));
        const double sk = std::sqrt(k);
        auto rb = riccati(ch.l, k * r_max);
        jv[a] = rb.j / sk;
        jpv[a] = k * rb.jp / sk;
        nv[a] = rb.n / sk;
        npv[a] = k * rb.np / sk;
    }

    // psi = J + N K  =>  K = (N' - Y N)^(-1) (Y J - J')
    Eigen::MatrixXd nyn = -(yoo * nv.matrix().asDiagonal());
    nyn += Eigen::MatrixXd(npv.matrix().asDiagonal());
    Eigen::MatrixXd yj = yoo * jv.matrix().asDiagonal();
    yj -= Eigen::MatrixXd(jpv.matrix().asDiagonal());
    Eigen::MatrixXd kmat = nyn.partialPivLu().solve(yj);

    // S = (I - iK)^(-1) (I + iK); the factors commute for symmetric K
    const std::complex<double> im(0.0, 1.0);
    Eigen::MatrixXcd kc = kmat.cast<std::complex<double>>();
    Eigen::MatrixXcd ident = Eigen::MatrixXcd::Identity(no, no);
    out.s = (ident - im * kc).partialPivLu().solve(ident + im * kc);
    return out;
}

}  // namespace retcc
