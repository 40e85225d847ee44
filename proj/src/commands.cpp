#include "noneq/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "noneq/chain.hpp"
#include "noneq/cyclegraph.hpp"
#include "noneq/cyclespace.hpp"
#include "noneq/errors.hpp"
#include "noneq/io.hpp"
#include "noneq/report.hpp"
#include "noneq/sim.hpp"
#include "noneq/synth.hpp"

namespace noneq {

namespace {

using nlohmann::json;

bool is_input_error(const Error& e) {
    return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const NotSquare*>(&e) ||
           dynamic_cast<const NonPositiveRate*>(&e) || dynamic_cast<const NegativeRate*>(&e) ||
           dynamic_cast<const TooSmall*>(&e) || dynamic_cast<const BadIndex*>(&e) ||
           dynamic_cast<const BadEdge*>(&e) || dynamic_cast<const BadStep*>(&e) ||
           dynamic_cast<const BadPower*>(&e) || dynamic_cast<const BadHorizon*>(&e);
}

int report_error(const Error& e, std::ostream& err) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e) ? kExitInputError : kExitNumericError;
}

int write_output(const std::string& path, const std::string& payload, std::ostream& out,
                 std::ostream& err) {
    if (path == "-" || path.empty()) {
        out << payload;
        return kExitOk;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        err << "error: cannot open output file '" << path << "'\n";
        return kExitInputError;
    }
    file << payload;
    return kExitOk;
}

}  // namespace

int run_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        ChainDocument doc = load_chain_document(opt.input, opt.csv, opt.exact);
        if (opt.exact) {
            Generator<Rational> g = validate_generator<Rational>(*doc.q_exact);
            Analysis<Rational> a = analyze_chain<Rational>(g);
            a.name = doc.name;
            out << (opt.json ? render_analysis_json(a) : render_analysis_text(a));
        } else {
            Generator<double> g = validate_generator<double>(doc.q);
            std::optional<double> tol = opt.tol;
            Analysis<double> a = analyze_chain<double>(g, tol);
            a.name = doc.name;
            out << (opt.json ? render_analysis_json(a) : render_analysis_text(a));
        }
        return kExitOk;
    } catch (const Error& e) {
        return report_error(e, err);
    }
}

int run_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        Regime regime = parse_regime(opt.regime);
        Generator<double> g = random_instance(opt.n, regime, opt.seed, opt.k);
        ChainDocument doc;
        doc.n = g.size();
        doc.q = g.matrix();
        doc.name = opt.name.empty() ? (opt.regime + "-n" + std::to_string(opt.n) + "-seed" +
                                       std::to_string(opt.seed))
                                    : opt.name;
        return write_output(opt.output, write_chain_json(doc), out, err);
    } catch (const Error& e) {
        return report_error(e, err);
    }
}

int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        ChainDocument doc = load_chain_document(opt.input, opt.csv, false);
        Generator<double> g = validate_generator<double>(doc.q);
        const int n = g.size();
        if (opt.runs < 1) throw ParseError("--runs must be at least 1");
        if (opt.start < 1 || opt.start > n) throw BadIndex(opt.start, n);
        if (!(opt.horizon > 0.0)) throw BadHorizon(opt.horizon);

        Distribution<double> pi = stationary_distribution(g);
        CurrentMatrix<double> analytic = current_matrix(g, pi);

        json runs = json::array();
        std::ostringstream table;
        table << "edge        analytic";
        for (int r = 0; r < opt.runs; ++r) table << "     run" << r << " z";
        table << "\n";

        std::vector<CurrentEstimate> estimates;
        for (int r = 0; r < opt.runs; ++r) {
            Trajectory t = simulate(g, opt.start, opt.horizon, opt.seed, static_cast<std::uint64_t>(r));
            estimates.push_back(empirical_currents(t, n));
        }

        for (int i = 1; i < n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                double target = analytic.at(i, j);
                table << "(" << i << "," << j << ")  " << std::setw(12) << std::setprecision(6)
                      << target;
                for (int r = 0; r < opt.runs; ++r) {
                    const auto& est = estimates[r];
                    double se = est.stderr_(i - 1, j - 1);
                    double diff = est.j_hat(i - 1, j - 1) - target;
                    double z = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : INFINITY);
                    table << "  " << std::setw(8) << std::setprecision(3) << z;
                }
                table << "\n";
            }

        for (int r = 0; r < opt.runs; ++r) {
            const auto& est = estimates[r];
            json run;
            run["stream"] = r;
            run["total_time"] = est.total_time;
            json edges = json::array();
            for (int i = 1; i < n; ++i)
                for (int j = i + 1; j <= n; ++j) {
                    json edge;
                    edge["i"] = i;
                    edge["j"] = j;
                    edge["analytic"] = analytic.at(i, j);
                    edge["empirical"] = est.j_hat(i - 1, j - 1);
                    edge["stderr"] = est.stderr_(i - 1, j - 1);
                    double se = est.stderr_(i - 1, j - 1);
                    double diff = est.j_hat(i - 1, j - 1) - analytic.at(i, j);
                    edge["z"] = se > 0.0 ? json(diff / se) : (diff == 0.0 ? json(0.0) : json(nullptr));
                    edges.push_back(std::move(edge));
                }
            run["edges"] = std::move(edges);
            runs.push_back(std::move(run));
        }

        if (opt.json) {
            json doc_out;
            doc_out["n"] = n;
            doc_out["horizon"] = opt.horizon;
            doc_out["seed"] = opt.seed;
            doc_out["runs"] = std::move(runs);
            out << doc_out.dump(2) << "\n";
        } else {
            out << "simulated " << opt.runs << " stream(s), horizon " << opt.horizon << ", seed "
                << opt.seed << "\n"
                << table.str();
        }
        return kExitOk;
    } catch (const Error& e) {
        return report_error(e, err);
    }
}

int run_cycles(const CyclesOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const int n = opt.n;
        IncidenceMatrix inc = incidence_matrix(n);

        if (opt.json) {
            json doc;
            doc["n"] = n;
            json edges = json::array();
            for (int r = 1; r <= edge_count(n); ++r) {
                auto [i, j] = theta_inverse(r, n);
                edges.push_back({{"r", r}, {"i", i}, {"j", j}});
            }
            doc["theta"] = std::move(edges);
            json gamma = json::array();
            for (int i = 0; i < inc.gamma.rows(); ++i) {
                json row = json::array();
                for (int j = 0; j < inc.gamma.cols(); ++j) row.push_back(inc.gamma(i, j));
                gamma.push_back(std::move(row));
            }
            doc["gamma"] = std::move(gamma);

            json cycles = json::array();
            json matrices = json::array();
            if (n >= 3) {
                auto triples = basis_triples(n);
                auto vectors = basis_cycles<Rational>(n);
                auto mats = cycle_matrix_basis<Rational>(n);
                for (std::size_t t = 0; t < triples.size(); ++t) {
                    json c;
                    c["triple"] = {triples[t].first(), triples[t].second(), triples[t].third()};
                    json entries = json::array();
                    for (int r = 1; r <= edge_count(n); ++r)
                        entries.push_back(static_cast<int>(vectors[t].at(r).to_double()));
                    c["vector"] = std::move(entries);
                    json m = json::array();
                    for (int i = 1; i <= n; ++i) {
                        json row = json::array();
                        for (int j = 1; j <= n; ++j)
                            row.push_back(static_cast<int>(mats[t].at(i, j).to_double()));
                        m.push_back(std::move(row));
                    }
                    c["matrix"] = std::move(m);
                    cycles.push_back(std::move(c));
                }
            }
            doc["basis"] = std::move(cycles);

            if (opt.k) {
                json kinfo;
                kinfo["k"] = *opt.k;
                kinfo["path"] = k_closed_path(n, *opt.k);
                kinfo["hamiltonian"] = is_k_hamiltonian(n, *opt.k);
                if (*opt.k <= n - 1) {
                    auto lam = lambda_antisym<Rational>(n, *opt.k);
                    json m = json::array();
                    for (int i = 1; i <= n; ++i) {
                        json row = json::array();
                        for (int j = 1; j <= n; ++j)
                            row.push_back(static_cast<int>(lam.at(i, j).to_double()));
                        m.push_back(std::move(row));
                    }
                    kinfo["lambda_antisym"] = std::move(m);
                }
                doc["k_cycle"] = std::move(kinfo);
            }
            out << doc.dump(2) << "\n";
            return kExitOk;
        }

        out << "complete interaction graph on n=" << n << " states, " << edge_count(n)
            << " edges\n\n";
        out << "theta edge index:\n";
        for (int r = 1; r <= edge_count(n); ++r) {
            auto [i, j] = theta_inverse(r, n);
            out << "  " << r << " <-> (" << i << "," << j << ")\n";
        }

        out << "\nincidence matrix (rows=states, columns in theta order):\n";
        for (int i = 0; i < inc.gamma.rows(); ++i) {
            out << " ";
            for (int j = 0; j < inc.gamma.cols(); ++j) out << std::setw(3) << inc.gamma(i, j);
            out << "\n";
        }

        if (n >= 3) {
            auto triples = basis_triples(n);
            auto vectors = basis_cycles<Rational>(n);
            auto mats = cycle_matrix_basis<Rational>(n);
            out << "\nbasis cycles (kernel vectors, theta order) and their cycle matrices:\n";
            for (std::size_t t = 0; t < triples.size(); ++t) {
                out << " C(" << triples[t].first() << "," << triples[t].second() << ","
                    << triples[t].third() << ") = (";
                for (int r = 1; r <= edge_count(n); ++r) {
                    if (r > 1) out << ", ";
                    out << vectors[t].at(r);
                }
                out << ")^t\n";
                for (int i = 1; i <= n; ++i) {
                    out << "   ";
                    for (int j = 1; j <= n; ++j) out << std::setw(3) << mats[t].at(i, j);
                    out << "\n";
                }
            }
        }

        if (opt.k) {
            auto path = k_closed_path(n, *opt.k);
            out << "\nk=" << *opt.k << " closed path: ";
            for (std::size_t s = 0; s < path.size(); ++s) {
                if (s > 0) out << " -> ";
                out << path[s];
            }
            out << "\nhamiltonian: " << (is_k_hamiltonian(n, *opt.k) ? "yes" : "no") << "\n";
            if (*opt.k <= n - 1) {
                auto lam = lambda_antisym<Rational>(n, *opt.k);
                out << "Lambda^k - (Lambda^k)^t:\n";
                for (int i = 1; i <= n; ++i) {
                    out << " ";
                    for (int j = 1; j <= n; ++j) out << std::setw(3) << lam.at(i, j);
                    out << "\n";
                }
            }
        }
        return kExitOk;
    } catch (const Error& e) {
        return report_error(e, err);
    }
}

}  // namespace noneq
