#pragma once
#include "rr/info.hpp"
#include "rr/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <map>
#include <stdexcept>
#include <string>

namespace rr {

// Basis of independent circular Gaussians: Q, X_10c, X_10n, X_11n, X_20c, X_20n, X_22n, N1..N4.
inline constexpr int kBasisSize = 11;

struct CovModel {
    Eigen::Matrix<double, kBasisSize, 1> basis_var;
    // Row per label over the basis; labels without a Gaussian construction are absent.
    std::array<Eigen::Matrix<cplx, 1, kBasisSize>, kLabelCount> rows;
    LabelSet available = 0;

    Eigen::MatrixXcd covariance(const std::vector<Label>& ls) const;
};

struct NumericalDegeneracy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CovModel build_cov(const GaussianScenario& scn, const PowerSplit& split);  // throws std::invalid_argument

// Bits per channel use.
double eval_term(const InfoTerm& t, const CovModel& m);
// Parameters must be bound through `params`; an unbound one throws std::invalid_argument.
double eval_expr(const InfoExpr& e, const CovModel& m, const std::map<std::string, double>& params = {});

// Displayed Gaussian formulas for the cooperation and decoding bounds; names as in bound_term().
double closed_form(const std::string& bound_name, const GaussianScenario& scn, const PowerSplit& split);
const std::vector<std::string>& closed_form_names();

// Gains inversely proportional to distance; interfering gains may carry a phase.
GaussianScenario symmetric_network(double P, double x, double y, double cross_phase = 0.0);

// Memoizes term values for one (scenario, split).
class TermCache {
public:
    TermCache(const GaussianScenario& scn, const PowerSplit& split) : model_(build_cov(scn, split)) {}
    double operator()(const InfoTerm& t);
    double operator()(const InfoExpr& e, const std::map<std::string, double>& params = {});
    const CovModel& model() const { return model_; }

private:
    CovModel model_;
    std::map<InfoTerm, double> memo_;
};

}  // namespace rr
