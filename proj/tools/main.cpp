// Command-line front end: decide, count, cross-check, generate, and benchmark
// instances of the three supported problems plus poset width queries.
//
// Exit codes: 0 satisfiable / success, 1 unsatisfiable, 2 malformed input or
// usage, 3 verification mismatch (bench --verify).

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "tempus/fd_csp.hpp"
#include "tempus/gen.hpp"
#include "tempus/ia_solver.hpp"
#include "tempus/io.hpp"
#include "tempus/oracle.hpp"
#include "tempus/order_core.hpp"
#include "tempus/pot_solver.hpp"

namespace {

using namespace tempus;

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitInputError = 2;
constexpr int kExitMismatch = 3;

constexpr int kVerifyPotMaxN = 5; // scenario oracle cap
constexpr int kVerifyIaMaxN = 4;  // ordered-partition oracle cap

const char* kind_name(const ParsedInstance& inst) {
    if (std::holds_alternative<POTInstance>(inst)) return "pot";
    if (std::holds_alternative<IAInstance>(inst)) return "ia";
    if (std::holds_alternative<CSPInstance>(inst)) return "csp";
    return "poset";
}

ParsedInstance load_instance(const std::string& path) {
    if (path == "-") return parse_instance(std::cin);
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file '" + path + "'");
    return parse_instance(f);
}

// Loads and checks the requested problem kind ("auto" accepts anything).
// Throws on malformed input; EmptyConstraint passes through to the caller.
ParsedInstance load_checked(const std::string& path, const std::string& want) {
    ParsedInstance inst = load_instance(path);
    if (want != "auto" && want != kind_name(inst))
        throw std::runtime_error(std::string("input is a '") + kind_name(inst) +
                                 "' instance but --problem says '" + want + "'");
    return inst;
}

int input_error(const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
}

struct SolveOutcome {
    bool sat = false;
    std::string witness;
};

SolveOutcome solve_any(const ParsedInstance& inst, int k, bool want_witness) {
    SolveOutcome out;
    if (const auto* pot = std::get_if<POTInstance>(&inst)) {
        if (want_witness) {
            auto w = pot_witness(*pot, k);
            out.sat = w.has_value();
            if (w) out.witness = serialize_scenario(*w);
        } else {
            out.sat = pot_decide(*pot, k);
        }
        return out;
    }
    if (const auto* ia = std::get_if<IAInstance>(&inst)) {
        if (want_witness) {
            auto w = ia_witness(*ia, k);
            out.sat = w.has_value();
            if (w) out.witness = serialize_ordered_partition(*w);
        } else {
            out.sat = ia_decide(*ia, k);
        }
        return out;
    }
    if (const auto* csp = std::get_if<CSPInstance>(&inst)) {
        auto w = csp_branch_solve(*csp);
        out.sat = w.has_value();
        if (w && want_witness) {
            std::ostringstream ws;
            for (std::size_t v = 0; v < w->size(); ++v) {
                ws << "x" << v << " = ";
                if ((*w)[v] < 0)
                    ws << "*"; // no visible domain
                else
                    ws << (*w)[v];
                ws << "\n";
            }
            out.witness = ws.str();
        }
        return out;
    }
    throw std::runtime_error("solve expects a pot, ia, or csp instance");
}

std::uint64_t count_any(const ParsedInstance& inst, int k) {
    if (const auto* pot = std::get_if<POTInstance>(&inst)) return pot_count(*pot, k);
    if (const auto* ia = std::get_if<IAInstance>(&inst)) return ia_count(*ia, k);
    if (const auto* csp = std::get_if<CSPInstance>(&inst)) return csp_enumerate(*csp);
    throw std::runtime_error("count expects a pot, ia, or csp instance");
}

OracleReport oracle_any(const ParsedInstance& inst, int k) {
    if (const auto* pot = std::get_if<POTInstance>(&inst)) return pot_oracle(*pot, k);
    if (const auto* ia = std::get_if<IAInstance>(&inst)) return ia_oracle(*ia, k);
    if (const auto* csp = std::get_if<CSPInstance>(&inst)) {
        OracleReport rep;
        rep.count = csp_enumerate(*csp);
        rep.decision = rep.count > 0;
        return rep;
    }
    throw std::runtime_error("oracle expects a pot, ia, or csp instance");
}

int run_solve(const std::string& input, const std::string& problem, int k, bool witness) {
    try {
        const ParsedInstance inst = load_checked(input, problem);
        const SolveOutcome out = solve_any(inst, k, witness);
        std::cout << (out.sat ? "SAT" : "UNSAT") << "\n" << out.witness;
        return out.sat ? kExitSat : kExitUnsat;
    } catch (const EmptyConstraint&) {
        std::cout << "UNSAT\n";
        return kExitUnsat;
    } catch (const std::exception& e) {
        return input_error(e);
    }
}

int run_count(const std::string& input, const std::string& problem, int k) {
    try {
        const ParsedInstance inst = load_checked(input, problem);
        const std::uint64_t m = count_any(inst, k);
        std::cout << "COUNT " << m << "\n";
        return m > 0 ? kExitSat : kExitUnsat;
    } catch (const EmptyConstraint&) {
        std::cout << "COUNT 0\n";
        return kExitUnsat;
    } catch (const std::exception& e) {
        return input_error(e);
    }
}

int run_oracle(const std::string& input, const std::string& problem, int k, bool with_count) {
    try {
        const ParsedInstance inst = load_checked(input, problem);
        const OracleReport rep = oracle_any(inst, k);
        if (with_count)
            std::cout << "COUNT " << rep.count << "\n";
        else
            std::cout << (rep.decision ? "SAT" : "UNSAT") << "\n";
        return rep.decision ? kExitSat : kExitUnsat;
    } catch (const EmptyConstraint&) {
        std::cout << (with_count ? "COUNT 0" : "UNSAT") << "\n";
        return kExitUnsat;
    } catch (const std::exception& e) {
        return input_error(e);
    }
}

int run_width(const std::string& input, int k) {
    try {
        ParsedInstance inst = load_instance(input);
        const auto* poset = std::get_if<PartialOrder>(&inst);
        if (!poset) throw std::runtime_error("width expects a poset instance");
        const bool ok = effective_width_at_most(*poset, k);
        std::cout << (ok ? "WIDTH-OK" : "WIDTH-FAIL") << "\n";
        return ok ? kExitSat : kExitUnsat;
    } catch (const std::exception& e) {
        return input_error(e);
    }
}

int run_params(const std::string& input) {
    try {
        ParsedInstance inst = load_instance(input);
        const auto* csp = std::get_if<CSPInstance>(&inst);
        if (!csp) throw std::runtime_error("params expects a csp instance");
        const CSPParams p = csp_params(*csp);
        std::cout << "dom " << p.dom << "\n"
                  << "max-arity " << p.max_arity << "\n"
                  << "max-degree " << p.max_degree << "\n"
                  << "max-cardinality " << p.max_cardinality << "\n";
        return kExitSat;
    } catch (const std::exception& e) {
        return input_error(e);
    }
}

std::string gen_text(const std::string& problem, int n, int k, std::uint64_t seed,
                     bool unsat_mix) {
    if (problem == "pot") return serialize_pot(gen_pot(n, k, seed, unsat_mix));
    if (problem == "ia") return serialize_ia(gen_ia(n, k, seed, unsat_mix));
    // Sparse binary instances; the width/overlap bound maps to the domain
    // size and the mix flag has no effect.
    return serialize_csp(gen_sparse_bincsp(std::max(2, k), n, seed));
}

int run_gen(const std::string& problem, int n, int k, std::uint64_t seed, bool unsat_mix,
            const std::string& output) {
    try {
        const std::string text = gen_text(problem, n, k, seed, unsat_mix);
        if (output == "-") {
            std::cout << text;
        } else {
            std::ofstream f(output);
            if (!f) throw std::runtime_error("cannot open output file '" + output + "'");
            f << text;
        }
        return kExitSat;
    } catch (const std::exception& e) {
        return input_error(e);
    }
}

struct BenchRow {
    std::string problem;
    int n, k;
    std::uint64_t seed;
    bool sat = false;
    std::optional<std::uint64_t> count;
    double millis = 0.0;
};

void write_row(std::ostream& os, const BenchRow& r) {
    os << r.problem << "," << r.n << "," << r.k << "," << r.seed << ","
       << (r.sat ? "sat" : "unsat") << ",";
    if (r.count) os << *r.count;
    os << "," << std::fixed << std::setprecision(3) << r.millis << "\n";
}

// Returns true when the row agrees with the reference oracle (or no oracle
// fits within its cap).
bool verify_row(const ParsedInstance& inst, int k, const BenchRow& r) {
    try {
        if (const auto* pot = std::get_if<POTInstance>(&inst)) {
            if (pot->n > kVerifyPotMaxN) return true;
            const OracleReport rep = pot_oracle(*pot, k);
            if (rep.decision != r.sat) return false;
            return !r.count || *r.count == rep.count;
        }
        if (const auto* ia = std::get_if<IAInstance>(&inst)) {
            if (ia->n > kVerifyIaMaxN) return true;
            const OracleReport rep = ia_oracle(*ia, k);
            if (rep.decision != r.sat) return false;
            return !r.count || *r.count == rep.count;
        }
        const auto& csp = std::get<CSPInstance>(inst);
        const std::uint64_t m = csp_enumerate(csp);
        if ((m > 0) != r.sat) return false;
        return !r.count || *r.count == m;
    } catch (const SizeLimitExceeded&) {
        return true; // reference out of reach; nothing to compare
    }
}

int run_bench(const std::string& problem, const std::string& n_range, int k, int seeds,
              bool verify, bool with_count, const std::string& output) {
    int lo = 0, hi = 0;
    const auto dots = n_range.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(n_range);
        } else {
            lo = std::stoi(n_range.substr(0, dots));
            hi = std::stoi(n_range.substr(dots + 2));
        }
    } catch (const std::exception&) {
        std::cerr << "error: --n-range expects 'A..B' or 'N'\n";
        return kExitInputError;
    }
    if (lo < 0 || hi < lo) {
        std::cerr << "error: --n-range expects 'A..B' with 0 <= A <= B\n";
        return kExitInputError;
    }

    std::ofstream file;
    if (output != "-") {
        file.open(output);
        if (!file) {
            std::cerr << "error: cannot open output file '" << output << "'\n";
            return kExitInputError;
        }
    }
    std::ostream& os = output == "-" ? std::cout : file;

    os << "problem,n,k,seed,result,count,millis\n";
    for (int n = lo; n <= hi; ++n)
        for (int seed = 0; seed < seeds; ++seed) {
            try {
                const bool mix = (seed % 2) == 1;
                ParsedInstance inst;
                if (problem == "pot")
                    inst = gen_pot(n, k, static_cast<std::uint64_t>(seed), mix);
                else if (problem == "ia")
                    inst = gen_ia(n, k, static_cast<std::uint64_t>(seed), mix);
                else
                    inst = gen_sparse_bincsp(std::max(2, k), n,
                                             static_cast<std::uint64_t>(seed));

                BenchRow row;
                row.problem = problem;
                row.n = n;
                row.k = k;
                row.seed = static_cast<std::uint64_t>(seed);
                const auto t0 = std::chrono::steady_clock::now();
                if (with_count) {
                    row.count = count_any(inst, k);
                    row.sat = *row.count > 0;
                } else {
                    row.sat = solve_any(inst, k, false).sat;
                }
                const auto t1 = std::chrono::steady_clock::now();
                row.millis =
                    std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count() / 1e6;
                write_row(os, row);
                if (verify && !verify_row(inst, k, row)) {
                    std::cerr << "error: verification mismatch at problem=" << problem
                              << " n=" << n << " k=" << k << " seed=" << seed << "\n";
                    return kExitMismatch;
                }
            } catch (const std::exception& e) {
                std::cerr << "error: bench failed at n=" << n << " seed=" << seed << ": "
                          << e.what() << "\n";
                return kExitInputError;
            }
        }
    return kExitSat;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solvers for width-bounded order scenarios, overlap-bounded "
                 "interval networks, and finite-domain constraints"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string problem = "auto";
    int k = 1;
    bool witness = false;
    bool with_count = false;

    const std::vector<std::string> solvable = {"auto", "pot", "ia", "csp"};

    auto* solve = app.add_subcommand("solve", "Decide an instance (prints SAT or UNSAT)");
    solve->add_option("-i,--input", input, "instance file, or - for stdin");
    solve->add_option("--problem", problem, "expected problem kind")
        ->check(CLI::IsMember(solvable));
    solve->add_option("-k", k, "width/overlap bound (ignored for csp)");
    solve->add_flag("--witness", witness, "print a witness after SAT");

    auto* count = app.add_subcommand("count", "Count solutions (prints COUNT <m>)");
    count->add_option("-i,--input", input, "instance file, or - for stdin");
    count->add_option("--problem", problem, "expected problem kind")
        ->check(CLI::IsMember(solvable));
    count->add_option("-k", k, "width/overlap bound (ignored for csp)");

    auto* oracle = app.add_subcommand("oracle", "Brute-force reference answer");
    oracle->add_option("-i,--input", input, "instance file, or - for stdin");
    oracle->add_option("--problem", problem, "expected problem kind")
        ->check(CLI::IsMember(solvable));
    oracle->add_option("-k", k, "width/overlap bound (ignored for csp)");
    oracle->add_flag("--count", with_count, "print COUNT <m> instead of SAT/UNSAT");

    auto* width = app.add_subcommand("width", "Check a poset's effective width bound");
    width->add_option("-i,--input", input, "poset file, or - for stdin");
    width->add_option("-k", k, "width bound")->required();

    auto* params = app.add_subcommand("params", "Print structural parameters of a csp");
    params->add_option("-i,--input", input, "csp file, or - for stdin");

    std::string gen_problem;
    int gen_n = 0;
    std::uint64_t gen_seed = 0;
    bool unsat_mix = false;
    std::string output = "-";

    auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
    gen->add_option("--problem", gen_problem, "problem kind")
        ->required()
        ->check(CLI::IsMember(std::vector<std::string>{"pot", "ia", "csp"}));
    gen->add_option("--n", gen_n, "instance size")->required();
    gen->add_option("-k,--k", k, "width/overlap bound (csp: domain size max(2,k))");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_flag("--unsat-mix", unsat_mix, "flip constraints against the built-in witness");
    gen->add_option("-o,--output", output, "output file, or - for stdout");

    std::string n_range = "2..4";
    int seeds = 1;
    bool verify = false;

    auto* bench = app.add_subcommand("bench", "Time seeded instances (CSV output)");
    bench->add_option("--problem", gen_problem, "problem kind")
        ->required()
        ->check(CLI::IsMember(std::vector<std::string>{"pot", "ia", "csp"}));
    bench->add_option("--n-range", n_range, "sizes A..B (or a single N)");
    bench->add_option("-k,--k", k, "width/overlap bound (csp: domain size max(2,k))");
    bench->add_option("--seeds", seeds, "seeds 0..S-1 per size");
    bench->add_flag("--verify", verify, "cross-check rows against the oracle when feasible");
    bench->add_flag("--count", with_count, "count solutions instead of deciding");
    bench->add_option("-o,--output", output, "output file, or - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    if (solve->parsed()) return run_solve(input, problem, k, witness);
    if (count->parsed()) return run_count(input, problem, k);
    if (oracle->parsed()) return run_oracle(input, problem, k, with_count);
    if (width->parsed()) return run_width(input, k);
    if (params->parsed()) return run_params(input);
    if (gen->parsed()) return run_gen(gen_problem, gen_n, k, gen_seed, unsat_mix, output);
    if (bench->parsed()) return run_bench(gen_problem, n_range, k, seeds, verify, with_count, output);
    return kExitInputError;
}
