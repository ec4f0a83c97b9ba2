#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

#include "retcc/errors.hpp"
#include "retcc/kinetics.hpp"

namespace retcc {

PopulationTrajectory evolve(const RateMatrix& g, double density_cm3,
                            const Eigen::VectorXd& p0, const std::vector<double>& times) {
    const auto n = g.generator().rows();
    if (p0.size() != n) throw ValidationError("evolve: p0 size mismatch");
    if (density_cm3 < 0.0) throw ValidationError("evolve: negative density");
    for (int i = 0; i < n; ++i)
        if (p0[i] < -1e-14) throw ValidationError("evolve: negative initial population");
    if (std::abs(p0.sum() - 1.0) > 1e-10)
        throw ValidationError("evolve: initial populations must sum to 1");

    PopulationTrajectory out;
    out.times = times;
    out.populations.reserve(times.size());

    // similarity transform with the Boltzmann vector symmetrizes a
    // detailed-balanced generator; fall back to the general solver otherwise
    const Eigen::VectorXd& eq = g.equilibrium();
    Eigen::VectorXd sq = eq.cwiseSqrt();
    Eigen::MatrixXd s = sq.cwiseInverse().asDiagonal() * g.generator() * sq.asDiagonal();
    const double scale = g.generator().cwiseAbs().maxCoeff();
    const double defect = (s - s.transpose()).cwiseAbs().maxCoeff();

    if (scale == 0.0) {
        for (std::size_t t = 0; t < times.size(); ++t) out.populations.push_back(p0);
        return out;
    }

    if (defect < 1e-10 * scale) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (s + s.transpose()));
        Eigen::VectorXd coeff = es.eigenvectors().transpose() *
                                (sq.cwiseInverse().asDiagonal() * p0);
        for (double t : times) {
            Eigen::VectorXd amp =
                (es.eigenvalues().array() * density_cm3 * t).exp() * coeff.array();
            out.populations.push_back(sq.asDiagonal() * (es.eigenvectors() * amp));
        }
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(g.generator());
        if (es.info() != Eigen::Success)
            throw ConvergenceError("evolve: eigendecomposition failed");
        Eigen::VectorXcd coeff =
            es.eigenvectors().partialPivLu().solve(p0.cast<std::complex<double>>());
        for (double t : times) {
            Eigen::VectorXcd amp =
                (es.eigenvalues().array() * density_cm3 * t).exp() * coeff.array();
            out.populations.push_back((es.eigenvectors() * amp).real());
        }
    }
    return out;
}

}  // namespace retcc
