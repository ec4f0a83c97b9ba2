#include <cmath>

#include "retcc/constants.hpp"
#include "retcc/errors.hpp"
#include "retcc/kinetics.hpp"

namespace retcc {

RateMatrix::RateMatrix(const RateTable& table, const RigidRotorSpecies& species,
                       double temperature, int jmax) {
    if (jmax < 0) throw ValidationError("rate matrix needs jmax >= 0");
    if (temperature <= 0.0) throw ValidationError("rate matrix needs T > 0");
    temperature_ = temperature;
    const int n = jmax + 1;
    g_ = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [key, entry] : table.entries) {
        const auto [ji, jf] = key;
        if (ji == jf) continue;
        if (ji < 0 || jf < 0) throw ValidationError("rate table with negative level index");
        if (ji > jmax || jf > jmax)
            throw ValidationError("rate table entry above jmax: " + std::to_string(ji) +
                                  "->" + std::to_string(jf));
        if (entry.k < 0.0) throw ValidationError("negative rate in table");
        g_(jf, ji) = entry.k;
    }
    for (int i = 0; i < n; ++i) {
        double loss = 0.0;
        for (int f = 0; f < n; ++f)
            if (f != i) loss += g_(f, i);
        g_(i, i) = -loss;
    }

    eq_.resize(n);
    const double kt = constants::kb_cm_per_K * temperature;
    for (int j = 0; j < n; ++j)
        eq_[j] = (2.0 * j + 1) * std::exp(-level_energy(species, j) / kt);
    eq_ /= eq_.sum();
}

RateMatrix RateMatrix::zero(int jmax, double temperature) {
    RateMatrix m;
    m.temperature_ = temperature;
    m.g_ = Eigen::MatrixXd::Zero(jmax + 1, jmax + 1);
    m.eq_ = Eigen::VectorXd::Constant(jmax + 1, 1.0 / (jmax + 1));
    return m;
}

double RateMatrix::balance_defect() const {
    return (g_ * eq_).cwiseAbs().maxCoeff();
}

}  // namespace retcc
