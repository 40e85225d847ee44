#include "noneq/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "noneq/cyclegraph.hpp"

namespace noneq {

namespace {

using nlohmann::json;

json value_of(double x) { return x; }
json value_of(const Rational& x) { return x.str(); }

template <class T>
json matrix_json(const Mat<T>& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(value_of(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class T>
json build_report(const Analysis<T>& a) {
    json out;
    out["n"] = a.n;
    out["exact"] = is_exact_v<T>;
    out["name"] = a.name;

    json pi = json::array();
    for (Eigen::Index i = 0; i < a.pi.size(); ++i) pi.push_back(value_of(a.pi(i)));
    out["pi"] = std::move(pi);
    out["D"] = matrix_json(a.currents);
    out["equilibrium"] = a.detailed_balance;

    json coeffs = json::array();
    if (a.n >= 3) {
        auto triples = basis_triples(a.n);
        for (std::size_t idx = 0; idx < triples.size(); ++idx) {
            json c;
            c["triple"] = {triples[idx].first(), triples[idx].second(), triples[idx].third()};
            c["value"] = value_of(a.coefficients[idx]);
            coeffs.push_back(std::move(c));
        }
    }
    out["coefficients"] = std::move(coeffs);

    if (a.detection) {
        json k;
        k["k"] = a.detection->k;
        k["d"] = value_of(a.detection->d);
        k["coprime"] = a.detection->coprime;
        out["k_detect"] = std::move(k);
    } else {
        out["k_detect"] = nullptr;
    }

    if (a.solver_applicable) {
        json one;
        one["valid"] = a.one_ne_valid;
        one["d"] = a.one_ne_d ? value_of(*a.one_ne_d) : json(nullptr);
        one["residual"] = a.one_ne_residual ? value_of(*a.one_ne_residual) : json(nullptr);
        one["reason"] = a.one_ne_reason.empty() ? json(nullptr) : json(a.one_ne_reason);
        out["one_ne"] = std::move(one);
    } else {
        out["one_ne"] = nullptr;
    }

    out["kolmogorov_gap"] = a.kolmogorov ? value_of(*a.kolmogorov) : json(nullptr);
    out["det_delta"] = a.det_delta ? value_of(*a.det_delta) : json(nullptr);
    return out;
}

std::string format_value(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

std::string format_value(const Rational& x) {
    std::ostringstream os;
    os << x.str();
    double approx = x.to_double();
    os << " (~" << std::setprecision(6) << approx << ")";
    return os.str();
}

template <class T>
std::string build_text(const Analysis<T>& a) {
    std::ostringstream os;
    os << "chain";
    if (!a.name.empty()) os << " '" << a.name << "'";
    os << ": n=" << a.n << (is_exact_v<T> ? " (exact mode)" : "") << "\n";

    os << "stationary pi:\n ";
    for (Eigen::Index i = 0; i < a.pi.size(); ++i) os << " " << format_value(a.pi(i));
    os << "\n";
    os << "detailed balance: " << (a.detailed_balance ? "yes (equilibrium)" : "no") << "\n";

    os << "currents D = PiQ - (PiQ)^t:\n";
    for (Eigen::Index i = 0; i < a.currents.rows(); ++i) {
        os << " ";
        for (Eigen::Index j = 0; j < a.currents.cols(); ++j)
            os << " " << format_value(a.currents(i, j));
        os << "\n";
    }

    if (a.n >= 3) {
        os << "cycle decomposition over the basis matrices:\n";
        auto triples = basis_triples(a.n);
        for (std::size_t idx = 0; idx < triples.size(); ++idx)
            os << "  d(" << triples[idx].first() << "," << triples[idx].second() << ","
               << triples[idx].third() << ") = " << format_value(a.coefficients[idx]) << "\n";

        if (a.detection)
            os << "k-non-equilibrium detected: k=" << a.detection->k
               << ", d=" << format_value(a.detection->d)
               << (a.detection->coprime ? " (Hamiltonian k-cycle)" : " (k not coprime to n)")
               << "\n";
        else
            os << "k-non-equilibrium detected: none\n";

        os << "ring solver: ";
        if (!a.one_ne_reason.empty()) {
            os << "not solvable (" << a.one_ne_reason << ")\n";
        } else {
            os << (a.one_ne_valid ? "valid 1-non-equilibrium chain" : "candidate rejected")
               << ", d=" << (a.one_ne_d ? format_value(*a.one_ne_d) : std::string("-"))
               << ", residual=" << (a.one_ne_residual ? format_value(*a.one_ne_residual) : std::string("-"))
               << "\n";
        }
        os << "kolmogorov gap: " << format_value(*a.kolmogorov)
           << "   det(Delta): " << format_value(*a.det_delta) << "\n";
    }
    return os.str();
}

}  // namespace

std::string render_analysis_json(const Analysis<double>& a) { return build_report(a).dump(2) + "\n"; }
std::string render_analysis_json(const Analysis<Rational>& a) { return build_report(a).dump(2) + "\n"; }
std::string render_analysis_text(const Analysis<double>& a) { return build_text(a); }
std::string render_analysis_text(const Analysis<Rational>& a) { return build_text(a); }

}  // namespace noneq
