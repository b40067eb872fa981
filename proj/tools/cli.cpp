#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "parikh/costchain.hpp"
#include "parikh/error.hpp"
#include "parikh/io.hpp"
#include "parikh/multigraph.hpp"
#include "parikh/parikh_count.hpp"
#include "parikh/reductions.hpp"
#include "parikh/unary.hpp"

namespace parikh::cli {

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content))
        throw InputError("cannot write '" + path + "'");
}

/// Prefixes parse errors with the file they came from.
template <typename Parse>
auto from_file(const std::string& path, const Parse& parse) -> decltype(parse(std::string_view{}))
{
    std::string text = read_file(path);
    try {
        return parse(std::string_view(text));
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

Acceptor load_acceptor(const std::string& path)
{
    return from_file(path, [](std::string_view t) { return parse_acceptor(t); });
}

CostChain load_chain(const std::string& path, std::ostream& err)
{
    std::vector<std::string> warnings;
    CostChain chain = from_file(path, [&](std::string_view t) { return parse_costchain(t, &warnings); });
    for (const auto& w : warnings)
        err << "warning: " << path << ": " << w << '\n';
    return chain;
}

const char* decision(bool value) { return value ? "true" : "false"; }

std::optional<CountMethod> count_method(const std::string& name)
{
    if (name.empty())
        return std::nullopt;
    return parse_count_method(name);
}

struct SelfCheck {
    const char* name;
    std::function<bool()> run;
};

Dfa all_accepting_ab()
{
    return Dfa::from_names({"a", "b"}, {"q"}, "q", {"q"}, {{"q", "a", "q"}, {"q", "b", "q"}});
}

CostChain airport()
{
    return CostChain::from_names({"s", "u", "t"}, "s", "t",
                                 {{"s", "t", 20, Rational(9, 10)},
                                  {"s", "u", 15, Rational(1, 10)},
                                  {"u", "u", 5, Rational(1, 5)},
                                  {"u", "t", 10, Rational(4, 5)},
                                  {"t", "t", 0, Rational(1)}});
}

std::vector<SelfCheck> self_checks(const EngineOptions& options)
{
    return {
        {"count-best-dp-enumerate",
         [options] {
             ParikhVector p{{"a", 2}, {"b", 1}};
             Dfa d = all_accepting_ab();
             return count_dfa(d, p, CountMethod::best, options) == 3 && count_dfa(d, p, CountMethod::dp, options) == 3 &&
                    count_dfa(d, p, CountMethod::enumerate, options) == 3;
         }},
        {"euler-vs-brute",
         [] {
             WeightedMultigraph g;
             NodeId v = g.add_node("v");
             g.add_edge(v, v, 2);
             g.add_edge(v, v, 1);
             return euler_count(g) == 1 && brute_euler_count(g) == 1;
         }},
        {"airport-cost-prob",
         [options] {
             CostFormula phi = CostFormula::atom(30);
             return cost_prob(airport(), phi, CostMethod::cost_dp, options) == Rational(249, 250) &&
                    cost_prob(airport(), phi, CostMethod::parikh_best, options) == Rational(249, 250);
         }},
        {"airport-expected", [] { return expected_cost(airport()) == Rational(165, 8); }},
        {"3sat-gadget",
         [options] {
             CnfFormula psi{3, {{Literal{1, true}, Literal{2, false}, Literal{3, true}},
                                {Literal{1, false}, Literal{2, true}, Literal{3, false}}}};
             CountingInstance inst = gen_3sat(psi);
             return count_dfa(inst.dfa, inst.parikh, CountMethod::best, options) == 6;
         }},
        {"posmatpow",
         [options] {
             MatPowInstance inst{{{BigInt(2)}}, {{BigInt(1)}}, 3};
             PosMatPowReduction r = reduce_posmatpow(inst);
             return count_dfa(r.plus, r.parikh, CountMethod::dp, options) -
                        count_dfa(r.minus, r.parikh, CountMethod::dp, options) ==
                    9;
         }},
        {"unary-sawa",
         [] {
             Nfa n = Nfa::from_names({"a"}, {"p", "q"}, "p", {"p"}, {{"p", "a", "q"}, {"q", "a", "p"}});
             BigInt big("1000000000001");
             return !unary_nfa_member(n, big, UnaryMethod::sawa) && !unary_nfa_member(n, big, UnaryMethod::matpow) &&
                    unary_nfa_member(n, big + 1, UnaryMethod::sawa);
         }},
    };
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact Parikh-image counting, cost-chain probabilities and reduction gadgets", "parikh"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned workers = 0;
    app.add_option("--workers", workers, "Worker threads for enumeration (results never depend on it)")
        ->check(CLI::Range(1u, 256u));

    std::string acceptor_path, a_path, b_path, parikh_text, method, chain_path, formula_text, threshold, bit_index,
        tau_text, n_text, out_path;

    auto* count_cmd = app.add_subcommand("count", "Number of accepted words with a given Parikh image");
    count_cmd->add_option("--acceptor", acceptor_path, "dfa/nfa/cfg file")->required();
    count_cmd->add_option("--parikh", parikh_text, "Parikh vector, e.g. \"a=2 b=1\"")->required();
    count_cmd->add_option("--method", method, "best | dp | enumerate");

    auto* pic_cmd = app.add_subcommand("pic", "Is N(A,p) > N(B,p)?");
    pic_cmd->add_option("--a", a_path, "first acceptor")->required();
    pic_cmd->add_option("--b", b_path, "second acceptor")->required();
    pic_cmd->add_option("--parikh", parikh_text, "Parikh vector")->required();
    pic_cmd->add_option("--method", method, "best | dp | enumerate");

    auto* bitp_cmd = app.add_subcommand("bitp", "Bit i (0 = least significant) of N(A,p)");
    bitp_cmd->add_option("--acceptor", acceptor_path, "dfa/nfa/cfg file")->required();
    bitp_cmd->add_option("--parikh", parikh_text, "Parikh vector")->required();
    bitp_cmd->add_option("--bit", bit_index, "bit index")->required();
    bitp_cmd->add_option("--method", method, "best | dp | enumerate");

    auto* prob_cmd = app.add_subcommand("cost-prob", "Exact P(K satisfies phi)");
    auto* decide_cmd = app.add_subcommand("cost-decide", "Is P(K satisfies phi) >= tau?");
    auto* bitcost_cmd = app.add_subcommand("bit-cost", "Bit j of P(K satisfies phi)");
    for (auto* cmd : {prob_cmd, decide_cmd, bitcost_cmd}) {
        cmd->add_option("--chain", chain_path, "cost chain file")->required();
        cmd->add_option("--formula", formula_text, "cost formula, e.g. \"x <= 30\"")->required();
        cmd->add_option("--method", method, "cost_dp | parikh_best");
    }
    decide_cmd->add_option("--threshold", threshold, "tau as m/d")->required();
    bitcost_cmd->add_option("--bit", bit_index, "bit index j (1 = first binary digit after the point)")->required();

    auto* quantile_cmd = app.add_subcommand("quantile", "Least b with P(K <= b) >= tau");
    quantile_cmd->add_option("--chain", chain_path, "cost chain file")->required();
    quantile_cmd->add_option("--tau", tau_text, "level in (0, 1] as m/d")->required();
    quantile_cmd->add_option("--method", method, "cost_dp | parikh_best");

    auto* expected_cmd = app.add_subcommand("expected", "Exact expected cost");
    expected_cmd->add_option("--chain", chain_path, "cost chain file")->required();

    auto* contract_cmd = app.add_subcommand("contract", "Remove zero-cost edges that avoid the target");
    contract_cmd->add_option("--chain", chain_path, "cost chain file")->required();
    contract_cmd->add_option("--out", out_path, "write the result here instead of stdout");

    auto* gen_cmd = app.add_subcommand("gen", "Reduction gadget generators");
    gen_cmd->require_subcommand(1);
    std::string cnf_path, matrix_path, fn_path, values_text;
    std::vector<std::string> emit;
    auto* gen_3sat_cmd = gen_cmd->add_subcommand("3sat", "DFA and Parikh vector counting models of a 3-CNF");
    gen_3sat_cmd->add_option("--cnf", cnf_path, "DIMACS file")->required();
    gen_3sat_cmd->add_option("--emit", emit, "DFA_FILE PARIKH_FILE")->expected(2);
    auto* gen_pmp_cmd = gen_cmd->add_subcommand("posmatpow", "DFAs A, B and p with N(A,p) - N(B,p) = f(M^n) + 1");
    gen_pmp_cmd->add_option("--matrix", matrix_path, "matrix M")->required();
    gen_pmp_cmd->add_option("--fn", fn_path, "coefficients of f")->required();
    gen_pmp_cmd->add_option("--n", n_text, "exponent n >= 1")->required();
    gen_pmp_cmd->add_option("--emit", emit, "A_FILE B_FILE PARIKH_FILE")->expected(3);
    auto* gen_ss_cmd = gen_cmd->add_subcommand("subsetsum", "Unary grammar of the subset sums");
    gen_ss_cmd->add_option("--values", values_text, "positive integers, e.g. \"3 5\"")->required();
    gen_ss_cmd->add_option("--emit", emit, "CFG_FILE")->expected(1);

    auto* umember_cmd = app.add_subcommand("unary-member", "Is a^n accepted?");
    umember_cmd->add_option("--acceptor", acceptor_path, "unary dfa/nfa/cfg file")->required();
    umember_cmd->add_option("--n", n_text, "word length (decimal, any size)")->required();
    umember_cmd->add_option("--method", method, "sawa | matpow (NFA only)");

    auto* upic_cmd = app.add_subcommand("unary-pic", "Is a^n in L(A) and not in L(B)?");
    upic_cmd->add_option("--a", a_path, "first acceptor")->required();
    upic_cmd->add_option("--b", b_path, "second acceptor")->required();
    upic_cmd->add_option("--n", n_text, "word length")->required();

    auto* selftest_cmd = app.add_subcommand("selftest", "Run built-in consistency checks");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return computed;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return computed;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    EngineOptions options;
    try {
        options = EngineOptions::from_env();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
    if (workers > 0)
        options.workers = workers;

    try {
        if (count_cmd->parsed()) {
            Acceptor a = load_acceptor(acceptor_path);
            out << to_string(count(a, parse_parikh(parikh_text), count_method(method), options)) << '\n';
        } else if (pic_cmd->parsed()) {
            Acceptor a = load_acceptor(a_path), b = load_acceptor(b_path);
            out << decision(pic(a, b, parse_parikh(parikh_text), count_method(method), options)) << '\n';
        } else if (bitp_cmd->parsed()) {
            Acceptor a = load_acceptor(acceptor_path);
            out << (bitp(a, parse_parikh(parikh_text), parse_natural(bit_index), count_method(method), options) ? 1 : 0)
                << '\n';
        } else if (prob_cmd->parsed() || decide_cmd->parsed() || bitcost_cmd->parsed()) {
            CostChain chain = load_chain(chain_path, err);
            CostFormula phi = parse_formula(formula_text);
            CostMethod cm = method.empty() ? CostMethod::cost_dp : parse_cost_method(method);
            if (prob_cmd->parsed())
                out << to_string(cost_prob(chain, phi, cm, options)) << '\n';
            else if (decide_cmd->parsed())
                out << decision(cost_decide(chain, phi, parse_fraction(threshold), cm, options)) << '\n';
            else
                out << (bitcost(chain, phi, to_u64(parse_natural(bit_index)), cm, options) ? 1 : 0) << '\n';
        } else if (quantile_cmd->parsed()) {
            CostChain chain = load_chain(chain_path, err);
            CostMethod cm = method.empty() ? CostMethod::cost_dp : parse_cost_method(method);
            out << to_string(quantile(chain, parse_fraction(tau_text), cm, options)) << '\n';
        } else if (expected_cmd->parsed()) {
            out << to_string(expected_cost(load_chain(chain_path, err))) << '\n';
        } else if (contract_cmd->parsed()) {
            std::string text = serialize_costchain(contract_zero_cost(load_chain(chain_path, err)));
            if (out_path.empty())
                out << text;
            else
                write_file(out_path, text);
        } else if (gen_3sat_cmd->parsed()) {
            CnfFormula psi = from_file(cnf_path, [](std::string_view t) { return parse_dimacs(t); });
            CountingInstance inst = gen_3sat(psi);
            if (emit.empty()) {
                out << serialize_acceptor(inst.dfa) << "# parikh " << serialize_parikh(inst.parikh) << '\n';
            } else {
                write_file(emit[0], serialize_acceptor(inst.dfa));
                write_file(emit[1], serialize_parikh(inst.parikh) + "\n");
            }
        } else if (gen_pmp_cmd->parsed()) {
            MatPowInstance inst{from_file(matrix_path, [](std::string_view t) { return parse_matrix(t); }),
                                from_file(fn_path, [](std::string_view t) { return parse_matrix(t); }),
                                parse_natural(n_text)};
            PosMatPowReduction r = reduce_posmatpow(inst);
            if (emit.empty()) {
                out << "# k=" << r.k << " d=" << r.d << " parikh " << serialize_parikh(r.parikh) << '\n';
                out << "# A\n" << serialize_acceptor(r.plus) << "# B\n" << serialize_acceptor(r.minus);
            } else {
                write_file(emit[0], serialize_acceptor(r.plus));
                write_file(emit[1], serialize_acceptor(r.minus));
                write_file(emit[2], serialize_parikh(r.parikh) + "\n");
            }
        } else if (gen_ss_cmd->parsed()) {
            std::vector<BigInt> values;
            std::istringstream in(values_text);
            for (std::string token; in >> token;)
                values.push_back(parse_natural(token));
            std::string text = serialize_acceptor(gen_subsetsum_cfg(values));
            if (emit.empty())
                out << text;
            else
                write_file(emit[0], text);
        } else if (umember_cmd->parsed()) {
            Acceptor a = load_acceptor(acceptor_path);
            BigInt n = parse_natural(n_text);
            bool member;
            if (!method.empty()) {
                const auto* nfa = std::get_if<Nfa>(&a);
                if (!nfa)
                    throw InputError("--method applies to NFA files only");
                member = unary_nfa_member(*nfa, n, parse_unary_method(method));
            } else {
                member = unary_member(a, n);
            }
            out << decision(member) << '\n';
        } else if (upic_cmd->parsed()) {
            Acceptor a = load_acceptor(a_path), b = load_acceptor(b_path);
            out << decision(unary_pic(a, b, parse_natural(n_text))) << '\n';
        } else if (selftest_cmd->parsed()) {
            bool all = true;
            for (const auto& check : self_checks(options)) {
                bool ok = check.run();
                all = all && ok;
                out << (ok ? "ok   " : "FAIL ") << check.name << '\n';
            }
            return all ? computed : internal_failure;
        }
    } catch (const SizeError& e) {
        err << "error: " << e.what() << '\n';
        return resource_guard;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return internal_failure;
    }
    return computed;
}

} // namespace parikh::cli
