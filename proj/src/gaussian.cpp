#include "rr/gaussian.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace rr {

namespace {

enum Basis { BQ, B10c, B10n, B11n, B20c, B20n, B22n, BN1, BN2, BN3, BN4 };

constexpr double kEigCut = 1e-12;

using Row = Eigen::Matrix<cplx, 1, kBasisSize>;

using Mat = Eigen::MatrixXcd;

// Orthonormal basis (columns) of the row space of X; singular values below the cutoff count as zero.
Mat row_space(const Mat& X, double scale) {
    if (X.rows() == 0) return Mat(kBasisSize, 0);
    Eigen::JacobiSVD<Mat> svd(X, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index r = 0;
    while (r < sv.size() && sv[r] > std::sqrt(kEigCut) * scale) ++r;
    return svd.matrixV().leftCols(r);
}

int rank_of(const Mat& gram, double scale) {
    if (gram.rows() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
    int r = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] > kEigCut * scale * scale) ++r;
    return r;
}

}  // namespace

Eigen::MatrixXcd CovModel::covariance(const std::vector<Label>& ls) const {
    Eigen::MatrixXcd A(ls.size(), kBasisSize);
    for (std::size_t i = 0; i < ls.size(); ++i) A.row(i) = rows[static_cast<int>(ls[i])];
    return A * basis_var.asDiagonal() * A.adjoint();
}

CovModel build_cov(const GaussianScenario& scn, const PowerSplit& p) {
    if (scn.P1 < 0 || scn.P2 < 0) throw std::invalid_argument("negative power budget");
    for (double v : {p.var_10c, p.var_10n, p.var_11n, p.var_20c, p.var_20n, p.var_22n})
        if (v < 0) throw std::invalid_argument("negative component variance");
    const double tol = 1e-9;
    if (p.power1() > scn.P1 * (1 + tol) + tol) throw std::invalid_argument("power split exceeds P1");
    if (p.power2() > scn.P2 * (1 + tol) + tol) throw std::invalid_argument("power split exceeds P2");

    CovModel m;
    m.basis_var << 1, p.var_10c, p.var_10n, p.var_11n, p.var_20c, p.var_20n, p.var_22n, 1, 1, 1, 1;
    for (auto& r : m.rows) r.setZero();
    auto set = [&](Label l, const Row& r) {
        m.rows[static_cast<int>(l)] = r;
        m.available |= bit(l);
    };
    auto unit = [](int b) {
        Row r = Row::Zero();
        r[b] = 1;
        return r;
    };
    Row q = unit(BQ);
    Row v1 = p.alpha1 * q + unit(B10c), u1 = v1 + unit(B10n), x1 = u1 + unit(B11n);
    Row v2 = p.alpha2 * q + unit(B20c), u2 = v2 + unit(B20n), x2 = u2 + unit(B22n);
    set(Label::Q, q);
    set(Label::V1, v1);
    set(Label::U1, u1);
    set(Label::T1, x1);
    set(Label::X1, x1);
    set(Label::V2, v2);
    set(Label::U2, u2);
    set(Label::T2, x2);
    set(Label::X2, x2);
    set(Label::Y1, scn.h12 * x2 + unit(BN1));
    set(Label::Y2, scn.h21 * x1 + unit(BN2));
    set(Label::Y3, scn.h31 * x1 + scn.h32 * x2 + unit(BN3));
    set(Label::Y4, scn.h41 * x1 + scn.h42 * x2 + unit(BN4));
    return m;
}

double eval_term(const InfoTerm& t, const CovModel& m) {
    LabelSet all = t.left | t.right | t.cond;
    if (all & ~m.available)
        throw std::invalid_argument("no Gaussian construction for " + format_labels(all & ~m.available));
    // Whitened rows: conditioning becomes an orthogonal projection in basis space.
    const Eigen::Matrix<double, 1, kBasisSize> sd = m.basis_var.cwiseSqrt().transpose();
    auto rows = [&](LabelSet s) {
        auto ls = members(s);
        Mat X(ls.size(), kBasisSize);
        for (std::size_t i = 0; i < ls.size(); ++i) X.row(i) = m.rows[static_cast<int>(ls[i])].cwiseProduct(sd.cast<cplx>());
        return X;
    };
    const Mat ML = rows(t.left), MR = rows(t.right), MC = rows(t.cond);
    double scale = 1.0;
    for (const Mat* X : {&ML, &MR, &MC})
        if (X->size()) scale = std::max(scale, X->rowwise().norm().maxCoeff());
    const Mat VC = row_space(MC, scale);
    const Mat AL = ML - ML * VC * VC.adjoint();
    const Mat Qr = row_space(MR - MR * VC * VC.adjoint(), scale);
    // K: the part of L explained by R beyond C; W: what is left of L given (R, C).
    const Mat LQ = AL * Qr;
    const Mat K = LQ * LQ.adjoint();
    const Mat B = AL - LQ * Qr.adjoint();
    const Mat W = B * B.adjoint();
    const int rank_w = rank_of(W, scale);
    if (rank_w != rank_of(AL * AL.adjoint(), scale))
        throw NumericalDegeneracy("rank changes under conditioning in " + format_term(t) + " (labels " +
                                  format_labels(t.left) + ")");
    // MI = log2 det(I + W^-1/2 K W^-1/2) on the range of W.
    Eigen::SelfAdjointEigenSolver<Mat> ew(W);
    Eigen::VectorXd isq = ew.eigenvalues();
    for (Eigen::Index i = 0; i < isq.size(); ++i)
        isq[i] = isq[i] > kEigCut * scale * scale ? 1.0 / std::sqrt(isq[i]) : 0.0;
    const Mat half = ew.eigenvectors() * isq.asDiagonal() * ew.eigenvectors().adjoint();
    Mat M = half * K * half;
    M = (M + M.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> em(M, Eigen::EigenvaluesOnly);
    double v = 0;
    for (Eigen::Index i = 0; i < em.eigenvalues().size(); ++i) v += std::log1p(std::max(0.0, em.eigenvalues()[i]));
    return v / std::log(2.0);
}

double eval_expr(const InfoExpr& e, const CovModel& m, const std::map<std::string, double>& params) {
    double acc = e.constant().get_d();
    for (const auto& [t, c] : e.terms()) acc += c.get_d() * eval_term(t, m);
    for (const auto& [p, c] : e.params()) {
        auto it = params.find(p);
        if (it == params.end()) throw std::invalid_argument("unbound parameter " + p);
        acc += c.get_d() * it->second;
    }
    return acc;
}

double TermCache::operator()(const InfoTerm& t) {
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
    double v = eval_term(t, model_);
    memo_.emplace(t, v);
    return v;
}

double TermCache::operator()(const InfoExpr& e, const std::map<std::string, double>& params) {
    double acc = e.constant().get_d();
    for (const auto& [t, c] : e.terms()) acc += c.get_d() * (*this)(t);
    for (const auto& [p, c] : e.params()) {
        auto it = params.find(p);
        if (it == params.end()) throw std::invalid_argument("unbound parameter " + p);
        acc += c.get_d() * it->second;
    }
    return acc;
}

const std::vector<std::string>& closed_form_names() {
    static const std::vector<std::string> v = {"coop1", "d1.T", "d1.TU2", "d1.TU1", "d1.TU1U2", "d1.all",
                                               "coop2", "d2.T", "d2.TU1", "d2.TU2", "d2.TU1U2", "d2.all"};
    return v;
}

double closed_form(const std::string& name, const GaussianScenario& s, const PowerSplit& p) {
    const double h31 = s.h31 * s.h31, h42 = s.h42 * s.h42, h21 = s.h21 * s.h21, h12 = s.h12 * s.h12;
    const double h32 = std::norm(s.h32), h41 = std::norm(s.h41);
    const double d1 = 1 + h32 * p.var_22n, d2 = 1 + h41 * p.var_11n;
    auto lg = [](double x) { return std::log1p(x) / std::log(2.0); };
    if (name == "coop1") return lg(h21 * p.var_10c / (1 + h21 * (p.var_10n + p.var_11n)));
    if (name == "d1.T") return lg(h31 * p.var_11n / d1);
    if (name == "d1.TU2") return lg((h31 * p.var_11n + h32 * p.var_20n) / d1);
    if (name == "d1.TU1") return lg(h31 * (p.var_10n + p.var_11n) / d1);
    if (name == "d1.TU1U2") return lg((h31 * (p.var_10n + p.var_11n) + h32 * p.var_20n) / d1);
    if (name == "d1.all")
        return lg((h31 * (p.var_10c + p.var_10n + p.var_11n) + h32 * (p.var_20c + p.var_20n) +
                   std::norm(s.h31 * p.alpha1 + s.h32 * p.alpha2)) / d1);
    if (name == "coop2") return lg(h12 * p.var_20c / (1 + h12 * (p.var_20n + p.var_22n)));
    if (name == "d2.T") return lg(h42 * p.var_22n / d2);
    if (name == "d2.TU1") return lg((h42 * p.var_22n + h41 * p.var_10n) / d2);
    if (name == "d2.TU2") return lg(h42 * (p.var_20n + p.var_22n) / d2);
    if (name == "d2.TU1U2") return lg((h42 * (p.var_20n + p.var_22n) + h41 * p.var_10n) / d2);
    if (name == "d2.all")
        return lg((h42 * (p.var_20c + p.var_20n + p.var_22n) + h41 * (p.var_10c + p.var_10n) +
                   std::norm(s.h42 * p.alpha2 + s.h41 * p.alpha1)) / d2);
    if (name == "coop2.ext") return lg(h12 * (p.var_20c + p.var_20n) / (1 + h12 * p.var_22n));
    throw std::invalid_argument("no closed form for '" + name + "'");
}

GaussianScenario symmetric_network(double P, double x, double y, double cross_phase) {
    if (!(x > 0) || !(y > 0) || P < 0) throw std::invalid_argument("symmetric network needs x, y > 0 and P >= 0");
    GaussianScenario s;
    s.h31 = s.h42 = 1.0 / x;
    s.h21 = s.h12 = 1.0 / y;
    const double c = 1.0 / std::sqrt(x * x + y * y);
    s.h32 = s.h41 = std::polar(c, cross_phase);
    s.P1 = s.P2 = P;
    return s;
}

}  // namespace rr
