#include "walras/economy.hpp"

#include <cmath>
#include <stdexcept>

namespace walras {

ExcessDemandModel::ExcessDemandModel(std::size_t dim, Map evaluate, std::string label,
                                     std::map<MonotonicityClass, bool> declared)
    : dim_(dim), evaluate_(std::move(evaluate)), label_(std::move(label)), declared_(std::move(declared)) {
    if (dim_ == 0) throw std::invalid_argument("excess demand model needs dimension >= 1");
    if (!evaluate_) throw std::invalid_argument("excess demand model needs an evaluation map");
}

PriceVector ExcessDemandModel::operator()(const PriceVector& p) const {
    if (p.size() != dim_) throw DimensionMismatch(dim_, p.size());
    PriceVector out = evaluate_(p);
    if (out.size() != dim_) throw DimensionMismatch(dim_, out.size());
    return out;
}

ExcessDemandModel linear_economy(Matrix m, std::vector<double> c, std::string label,
                                 std::map<MonotonicityClass, bool> declared) {
    const std::size_t n = c.size();
    if (n == 0) throw std::invalid_argument("linear economy needs at least one commodity");
    if (m.size() != n) throw DimensionMismatch(n, m.size());
    for (const auto& row : m) {
        if (row.size() != n) throw DimensionMismatch(n, row.size());
        for (double v : row)
            if (!std::isfinite(v)) throw std::invalid_argument("linear economy matrix must be finite");
    }
    for (double v : c)
        if (!std::isfinite(v)) throw std::invalid_argument("linear economy offset must be finite");
    auto eval = [m = std::move(m), c = std::move(c)](const PriceVector& p) {
        std::vector<double> out(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) out[i] = dot(m[i], p.view()) - c[i];
        return PriceVector(std::move(out));
    };
    return ExcessDemandModel(n, std::move(eval), std::move(label), std::move(declared));
}

ExcessDemandModel scalar_economy(std::function<double(double)> f, double lo, double hi, std::string label,
                                 std::map<MonotonicityClass, bool> declared) {
    if (!f) throw std::invalid_argument("scalar economy needs a function");
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
        throw std::invalid_argument("scalar economy needs a finite interval lo <= hi");
    auto eval = [f = std::move(f)](const PriceVector& p) { return PriceVector{f(p[0])}; };
    return ExcessDemandModel(1, std::move(eval), std::move(label), std::move(declared));
}

std::function<double(double)> scalar_function(const std::string& name) {
    if (name == "half_minus_t") return [](double t) { return 0.5 - t; };
    if (name == "t_minus_half") return [](double t) { return t - 0.5; };
    if (name == "t_plus_tenth") return [](double t) { return t + 0.1; };
    if (name == "cubic_centered") return [](double t) { return (t - 0.5) * (t - 0.5) * (t - 0.5); };
    throw std::out_of_range("unknown scalar function: " + name);
}

std::vector<std::string> scalar_function_names() {
    return {"half_minus_t", "t_minus_half", "t_plus_tenth", "cubic_centered"};
}

void MortgageTerms::validate() const {
    if (!(principal > 0.0) || !std::isfinite(principal)) throw std::invalid_argument("principal must be positive");
    if (periods < 1) throw std::invalid_argument("periods must be at least 1");
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw std::invalid_argument("rate must be nonnegative");
    if (!(down_payment >= 0.0) || !std::isfinite(down_payment))
        throw std::invalid_argument("down payment must be nonnegative");
}

double mortgage_payment(const MortgageTerms& terms) {
    terms.validate();
    const double n = terms.periods;
    const double r = terms.rate;
    if (r == 0.0) return terms.principal / n;
    // (1+r)^N / ((1+r)^N - 1) = 1 / (1 - (1+r)^-N), evaluated without cancellation.
    const double discount = -std::expm1(-n * std::log1p(r));
    return terms.principal * r / discount;
}

double mortgage_payment_slope(const MortgageTerms& terms) {
    terms.validate();
    const double n = terms.periods;
    const double r = terms.rate;
    if (n * r < 1e-5) return terms.principal * ((n + 1.0) / (2.0 * n) + (n * n - 1.0) * r / (6.0 * n));
    const double discount = -std::expm1(-n * std::log1p(r));
    const double discount_slope = n * std::exp(-(n + 1.0) * std::log1p(r));
    return terms.principal * (discount - r * discount_slope) / (discount * discount);
}

AffineCap linearized_cap(const MortgageTerms& terms, double reference_rate) {
    MortgageTerms at = terms;
    at.rate = reference_rate;
    at.validate();
    const double n = at.periods;
    const double value = at.down_payment + n * mortgage_payment(at);
    const double slope = n * mortgage_payment_slope(at);
    return AffineCap{reference_rate - value / slope, 1.0 / slope};
}

Polyhedron mortgage_region(const AffineCap& cap, const std::vector<double>& lower, const std::vector<double>& upper,
                           double rate_upper) {
    if (lower.empty()) throw std::invalid_argument("mortgage region needs n >= 2");
    if (lower.size() != upper.size()) throw DimensionMismatch(lower.size(), upper.size());
    if (!std::isfinite(cap.intercept) || !std::isfinite(cap.slope))
        throw std::invalid_argument("mortgage cap must be finite");
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]))
            throw std::invalid_argument("mortgage region bounds must be finite");
        if (lower[j] < 0.0) throw std::invalid_argument("mortgage region bounds must be nonnegative");
    }
    const std::size_t n = lower.size() + 1;
    std::vector<double> row(n, 0.0);
    row[0] = 1.0;
    row[1] = -cap.slope;
    std::vector<double> lo{0.0};
    std::vector<double> hi{rate_upper};
    lo.insert(lo.end(), lower.begin(), lower.end());
    hi.insert(hi.end(), upper.begin(), upper.end());
    return Polyhedron({row}, {cap.intercept}, lo, hi);
}

bool is_positive(const ExcessDemandModel& e, const ConvexRegion& x, const std::vector<PriceVector>& samples,
                 double margin) {
    if (samples.empty()) throw std::invalid_argument("positivity check needs at least one sample");
    if (e.dim() != x.dim()) throw DimensionMismatch(x.dim(), e.dim());
    for (const auto& p : samples) {
        const auto v = e(p);
        for (double c : v)
            if (!(c > margin)) return false;
    }
    return true;
}

namespace {

using MC = MonotonicityClass;

std::map<MC, bool> all_hold() {
    return {{MC::pseudo, true}, {MC::strict_pseudo, true}, {MC::proper_quasi, true},
            {MC::proper_quasi_dual, true}, {MC::strict_proper_quasi, true}};
}

Box unit_box(std::size_t n) { return Box(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)); }

}  // namespace

std::vector<Fixture> default_catalog() {
    std::vector<Fixture> out;
    out.push_back({"half_minus_t",
                   scalar_economy(scalar_function("half_minus_t"), 0.0, 1.0, "half_minus_t",
                                  {{MC::pseudo, false}, {MC::strict_pseudo, false}, {MC::proper_quasi, false},
                                   {MC::proper_quasi_dual, false}, {MC::strict_proper_quasi, false}}),
                   unit_box(1), 0.001, "E(t) = 0.5 - t on [0,1]: three VI solutions, no Minty solution"});
    out.push_back({"t_minus_half",
                   scalar_economy(scalar_function("t_minus_half"), 0.0, 1.0, "t_minus_half", all_hold()),
                   unit_box(1), 0.001, "E(t) = t - 0.5 on [0,1]: unique solution 0.5"});
    out.push_back({"t_plus_tenth",
                   scalar_economy(scalar_function("t_plus_tenth"), 0.0, 1.0, "t_plus_tenth", all_hold()),
                   unit_box(1), 0.001, "E(t) = t + 0.1 on [0,1]: positive, solution at 0"});
    out.push_back({"identity_box", linear_economy({{1, 0}, {0, 1}}, {0.5, 0.5}, "identity_box", all_hold()),
                   unit_box(2), 0.001, "E(p) = p - (0.5, 0.5) on the unit square"});
    out.push_back({"clamp_box", linear_economy({{1, 0}, {0, 1}}, {1.5, 0.5}, "clamp_box", all_hold()),
                   unit_box(2), 0.001, "E(p) = p - (1.5, 0.5) on the unit square: clamped solution (1, 0.5)"});
    out.push_back({"constant_orthogonal",
                   linear_economy({{0, 0}, {0, 0}}, {-1, 0}, "constant_orthogonal",
                                  {{MC::pseudo, true}, {MC::strict_pseudo, false}, {MC::proper_quasi, true},
                                   {MC::proper_quasi_dual, true}, {MC::strict_proper_quasi, false}}),
                   unit_box(2), 0.001, "E(p) = (1, 0) on the unit square: the face x1 = 0 solves the VI"});
    out.push_back({"rotation_square",
                   linear_economy({{0, 1}, {-1, 0}}, {0.5, -0.5}, "rotation_square",
                                  {{MC::pseudo, true}, {MC::proper_quasi, true}, {MC::proper_quasi_dual, true}}),
                   unit_box(2), 0.001, "skew field rotating about (0.5, 0.5) on the unit square"});
    // c = M x* makes x* a zero on the edge p3 = 0.
    {
        const Matrix m{{2.0, 0.5, 0.0}, {-0.5, 1.5, 0.2}, {0.0, -0.2, 1.0}};
        const std::vector<double> xs{0.5, 0.5, 0.0};
        std::vector<double> c(3);
        for (int i = 0; i < 3; ++i) c[i] = dot(m[i], xs);
        out.push_back({"pd_simplex", linear_economy(m, c, "pd_simplex", all_hold()), Simplex(3), 0.001,
                       "nonsymmetric positive-definite field on the 2-simplex, zero at (0.5, 0.5, 0)"});
    }
    out.push_back({"positive_simplex",
                   linear_economy({{1, 0}, {0, 1}}, {-0.1, -0.1}, "positive_simplex", all_hold()), Simplex(2), 0.001,
                   "E(p) = p + (0.1, 0.1) on the 1-simplex: positive, solution (0.5, 0.5)"});
    out.push_back({"mortgage_linear",
                   linear_economy({{1, 0}, {0, 1}}, {0.75, 1.25}, "mortgage_linear", all_hold()),
                   mortgage_region(AffineCap{-1.0, 1.0}, {1.0}, {2.0}, 1.0), 0.001,
                   "E(p) = p - (0.75, 1.25) on {0 <= p1 <= p2 - 1, 1 <= p2 <= 2}: solution (0.5, 1.5)"});
    out.push_back({"constant_positive",
                   linear_economy({{0, 0}, {0, 0}}, {-1, -1}, "constant_positive",
                                  {{MC::pseudo, true}, {MC::strict_pseudo, false}, {MC::proper_quasi, true},
                                   {MC::proper_quasi_dual, true}, {MC::strict_proper_quasi, false}}),
                   unit_box(2), 0.001, "E(p) = (1, 1) on the unit square: positive, unique solution (0, 0)"});
    return out;
}

Fixture find_fixture(const std::string& label) {
    for (auto& f : default_catalog())
        if (f.label == label) return f;
    throw std::out_of_range("unknown fixture: " + label);
}

}  // namespace walras
