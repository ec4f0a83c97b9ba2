#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "retcc/channel.hpp"

namespace retcc {

// ---- angular expansion functions -----------------------------------------
//
// V(R, th1, th2, phi) = sum_t v_t(R) * A_t(th1, th2, phi) with
//
//   A_{l1 l2 l}(th1, th2, phi)
//     = sum_m <l1 m l2 -m | l 0> C_{l1 m}(th1, 0) C_{l2 -m}(th2, phi)
//
// built from Racah-normalized spherical harmonics C_lm = sqrt(4pi/(2l+1)) Y_lm.
// A_000 = 1 identically and A_{lam 0 lam} = P_lam(cos th1); the coefficients
// of the (lam,0,lam) terms therefore match the usual atom-rotor Legendre
// expansion after scaling (see coupling.hpp for the matrix-element side).
//
// Orthogonality over d(cos th1) d(cos th2) d(phi):
//   Int A_t A_t' = 8 pi / ((2 l1 + 1)(2 l2 + 1)) delta_tt'
double bispherical_term(const TermIndex& t, double theta1, double theta2, double phi);

// normalized associated Legendre: Y_lm(th, ph) = theta_lm(th) e^(i m ph)
double theta_lm(int l, int m, double costheta);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
QuadratureRule gauss_legendre(int n);  // on [-1, 1]

// ---- radial coefficient functions ----------------------------------------

class RadialFunction {
  public:
    virtual ~RadialFunction() = default;
    virtual double value(double r_bohr) const = 0;  // cm^-1
    virtual std::string describe() const = 0;
};

// a*exp(-alpha r) - c6/r^6
class ExpRepulsionDispersion final : public RadialFunction {
  public:
    ExpRepulsionDispersion(double a, double alpha, double c6);
    // solve (a, c6) so the minimum sits at r_e with depth `depth` (> 0, cm^-1)
    static ExpRepulsionDispersion from_well(double depth, double r_e, double alpha);
    double value(double r) const override;
    std::string describe() const override;
    double a() const { return a_; }
    double alpha() const { return alpha_; }
    double c6() const { return c6_; }

  private:
    double a_, alpha_, c6_;
};

// monotone cubic interpolation of knots, power-law tail beyond the last knot;
// querying below the first knot throws ValidationError
class TabulatedRadial final : public RadialFunction {
  public:
    TabulatedRadial(std::vector<double> r, std::vector<double> v, int tail_power = 6);
    double value(double r) const override;
    std::string describe() const override;
    double r_min() const { return r_.front(); }
    double r_max() const { return r_.back(); }

  private:
    std::vector<double> r_, v_, slope_;
    int tail_power_;
    double tail_coeff_;
};

class ScaledRadial final : public RadialFunction {
  public:
    ScaledRadial(double scale, std::shared_ptr<const RadialFunction> base)
        : scale_(scale), base_(std::move(base)) {}
    double value(double r) const override { return scale_ * base_->value(r); }
    std::string describe() const override;

  private:
    double scale_;
    std::shared_ptr<const RadialFunction> base_;
};

// ---- the expansion --------------------------------------------------------

struct ExpansionTerm {
    TermIndex index;
    std::shared_ptr<const RadialFunction> radial;
};

class PotentialExpansion {
  public:
    PotentialExpansion(std::vector<ExpansionTerm> terms, std::string provenance);

    double evaluate(double r, double theta1, double theta2, double phi) const;
    std::vector<std::pair<TermIndex, double>> radial_coefficients(double r) const;
    const std::vector<ExpansionTerm>& terms() const { return terms_; }
    const std::string& provenance() const { return provenance_; }

  private:
    std::vector<ExpansionTerm> terms_;  // unique indices; exactly one (0,0,0)
    std::string provenance_;
};

// closed-form model potential on (r, th1, th2, phi)
using ModelPotential = std::function<double(double, double, double, double)>;

struct ProjectionOptions {
    int l1max = 4;
    int l2max = 2;
    int n_theta1 = 0;   // 0 -> derived from band limits
    int n_theta2 = 0;
    int n_phi = 0;
    std::vector<double> r_knots;      // radial grid for the tabulated coefficients
    double coefficient_floor = 1e-14; // drop terms with max |v| below this
    int tail_power = 6;
};

// project a closed-form model onto the expansion basis by product quadrature
// (Gauss-Legendre in cos th1, cos th2; uniform in phi).  Exact for band-limited
// integrands when the orders exceed the band.
PotentialExpansion project(const ModelPotential& model, const ProjectionOptions& opt);

// bundled models
PotentialExpansion iso88_expansion();                 // isotropic, well depth 88.5 cm^-1
struct AnisoDemoStrengths {
    double s101 = 0.15;  // odd CO anisotropy
    double s202 = 0.30;  // even CO anisotropy
    double s220 = 0.10;
    double s222 = 0.05;
};
PotentialExpansion aniso_demo_expansion(const AnisoDemoStrengths& s = {});

// delimited text import/export: header "R_bohr,v_l1_l2_l,..."
PotentialExpansion read_radial_table(const std::string& path, int tail_power = 6);
void write_radial_table(const PotentialExpansion& e, const std::string& path,
                        const std::vector<double>& r_knots);

}  // namespace retcc
