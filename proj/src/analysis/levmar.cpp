#include <cmath>

#include "retcc/analysis.hpp"
#include "retcc/errors.hpp"

namespace retcc {

double FitResult::parameter(const std::string& name) const {
    for (std::size_t i = 0; i < parameter_names.size(); ++i)
        if (parameter_names[i] == name) return parameters[static_cast<Eigen::Index>(i)];
    throw std::out_of_range("no fit parameter named " + name);
}

double FitResult::stderr_of(const std::string& name) const {
    for (std::size_t i = 0; i < parameter_names.size(); ++i)
        if (parameter_names[i] == name) {
            auto k = static_cast<Eigen::Index>(i);
            return std::sqrt(std::max(0.0, covariance(k, k)));
        }
    throw std::out_of_range("no fit parameter named " + name);
}

namespace {

void finite_difference_jacobian(const ModelFn& model, const Eigen::VectorXd& p,
                                const Eigen::VectorXd& f0, Eigen::MatrixXd& jac) {
    const auto n = f0.size();
    const auto np = p.size();
    jac.resize(n, np);
    Eigen::VectorXd fp(n);
    for (Eigen::Index j = 0; j < np; ++j) {
        const double h = std::max(1e-7 * std::abs(p[j]), 1e-10);
        Eigen::VectorXd pj = p;
        pj[j] += h;
        model(pj, fp);
        jac.col(j) = (fp - f0) / h;
    }
}

}  // namespace

FitResult levenberg_marquardt(const ModelFn& model, const JacobianFn& jacobian,
                              const Eigen::VectorXd& y, const Eigen::VectorXd& p0,
                              const std::vector<std::string>& names,
                              const LevMarOptions& opt) {
    const auto n = y.size();
    const auto np = p0.size();
    if (static_cast<Eigen::Index>(names.size()) != np)
        throw ValidationError("levmar: parameter name count mismatch");
    if (n < np) throw ValidationError("levmar: fewer samples than parameters");

    FitResult out;
    out.parameter_names = names;

    Eigen::VectorXd p = p0;
    Eigen::VectorXd f(n);
    model(p, f);
    Eigen::VectorXd r = y - f;
    double cost = r.squaredNorm();

    Eigen::MatrixXd jac;
    auto compute_jac = [&](const Eigen::VectorXd& pp, const Eigen::VectorXd& ff) {
        if (jacobian)
            jacobian(pp, jac);
        else
            finite_difference_jacobian(model, pp, ff, jac);
    };
    compute_jac(p, f);

    Eigen::MatrixXd a = jac.transpose() * jac;
    Eigen::VectorXd g = jac.transpose() * r;

    double lambda = opt.tau * a.diagonal().maxCoeff();
    if (!(lambda > 0)) lambda = opt.tau;
    double nu = 2.0;
    int iter = 0;
    bool converged = g.lpNorm<Eigen::Infinity>() < opt.gradient_tolerance;

    for (; iter < opt.max_iterations && !converged; ++iter) {
        Eigen::MatrixXd am = a;
        // Marquardt scaling keeps mixed parameter magnitudes workable
        for (Eigen::Index i = 0; i < np; ++i)
            am(i, i) += lambda * std::max(a(i, i), 1e-30);
        Eigen::VectorXd h = am.ldlt().solve(g);
        if (!h.allFinite()) {
            lambda *= nu;
            nu *= 2.0;
            continue;
        }
        if (h.norm() < opt.rel_tolerance * (p.norm() + opt.rel_tolerance)) {
            converged = true;
            break;
        }
        Eigen::VectorXd pnew = p + h;
        Eigen::VectorXd fnew(n);
        model(pnew, fnew);
        Eigen::VectorXd rnew = y - fnew;
        const double cost_new = rnew.squaredNorm();
        Eigen::VectorXd denom_v = lambda * h.cwiseProduct(a.diagonal().cwiseMax(1e-30)) + g;
        double denom = 0.5 * h.dot(denom_v);
        double rho = denom > 0 ? (cost - cost_new) / denom : (cost - cost_new);
        if (cost_new < cost && std::isfinite(cost_new)) {
            p = pnew;
            f = fnew;
            r = rnew;
            cost = cost_new;
            compute_jac(p, f);
            a = jac.transpose() * jac;
            g = jac.transpose() * r;
            double shrink = 1.0 - std::pow(2.0 * std::max(rho, 0.0) - 1.0, 3);
            lambda *= std::max(1.0 / 3.0, std::min(shrink, 1.0));
            nu = 2.0;
            if (g.lpNorm<Eigen::Infinity>() < opt.gradient_tolerance) converged = true;
        } else {
            lambda *= nu;
            nu *= 2.0;
            if (!std::isfinite(lambda) || lambda > 1e200) break;
        }
    }

    out.parameters = p;
    out.iterations = iter;
    out.converged = converged;
    out.residual_norm = std::sqrt(cost);

    // covariance from the final Jacobian; equilibrate columns first so the
    // inversion is insensitive to wildly different parameter scales
    compute_jac(p, f);
    Eigen::MatrixXd ata = jac.transpose() * jac;
    const double dof = static_cast<double>(n - np);
    const double s2 = dof > 0 ? cost / dof : 0.0;
    Eigen::VectorXd d = ata.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd scaled = d.asDiagonal() * ata * d.asDiagonal();
    Eigen::MatrixXd inv_scaled =
        scaled.completeOrthogonalDecomposition().pseudoInverse();
    Eigen::MatrixXd inv = d.asDiagonal() * inv_scaled * d.asDiagonal();
    out.covariance = s2 * 0.5 * (inv + inv.transpose());
    return out;
}

}  // namespace retcc
