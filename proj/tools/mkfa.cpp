// mkfa -- command-line front end: evaluation, constructions, oracle
// verification, documented-gap probes and the logic pipeline.
//
// Exit codes for eval: 1 parse error, 2 validation error, 3 foreign
// letter.  verify exits nonzero when an asserted invariant fails; probe
// counterexamples are reports, not failures.

#include "mkfa/format.hpp"
#include "mkfa/harness.hpp"
#include "mkfa/langexpr.hpp"
#include "mkfa/logic.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace mkfa;

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::size_t maxlen = 5;
    std::size_t trials = 100;
    std::uint64_t budget = 1000;
    std::string format = "text";
};

std::string escape_lines(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '\n')
            out += "\\n";
        else
            out.push_back(c);
    }
    return out;
}

void print_report(const harness::Report& r, const std::string& format) {
    if (format == "records") {
        std::cout << "name=" << r.name << " verdict=" << r.verdict << " seed=" << r.seed
                  << " instance=" << r.instance << " detail=\"" << escape_lines(r.detail)
                  << "\"";
        if (!r.dump.empty()) std::cout << " dump=\"" << escape_lines(r.dump) << "\"";
        std::cout << "\n";
        return;
    }
    if (r.verdict == "ok") return; // keep text mode terse
    std::cout << "[" << r.name << "] " << r.verdict << " (instance " << r.instance
              << "): " << r.detail << "\n";
    if (!r.dump.empty()) std::cout << r.dump;
}

MkAutomaton load_mk(const std::string& path) {
    ParsedAutomaton p = parse_automaton_file(path);
    if (p.kind != ParsedAutomaton::Kind::Mk)
        throw FormatError(path + ": expected an mk-kind automaton");
    auto violations = validate(p.mk);
    if (!violations.empty()) {
        std::string msg = path + " failed validation:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw std::domain_error(msg);
    }
    return p.mk;
}

Dfa load_classical(const std::string& path) {
    ParsedAutomaton p = parse_automaton_file(path);
    if (p.kind != ParsedAutomaton::Kind::Classical)
        throw FormatError(path + ": expected a classical-kind automaton");
    return to_dfa(p.classical);
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

// ------------------------------------------------------------------ eval

int cmd_eval(const GlobalOpts& g, const std::string& file, const std::string& expr,
             const std::string& word_text, bool support) {
    LangExprLoader loader{load_mk, load_classical};
    if (!expr.empty()) {
        // with --expr the first positional is the word, not a file
        const std::string& word_in = word_text.empty() ? file : word_text;
        LangExprPtr e = parse_lang_expr(expr, loader);
        if (support) {
            for (const Word& w : stgsupp(*e, g.maxlen))
                std::cout << "'" << word_str(e->alphabet, w) << "'\n";
            return 0;
        }
        Word w = word_from_string(e->alphabet, word_in);
        TruthValue v = eval(*e, w);
        std::cout << v.str() << " ~ " << v.approx_str() << "\n";
        return 0;
    }
    MkAutomaton a = load_mk(file);
    Word w = word_from_string(a.alphabet, word_text);
    TruthValue v = behavior(a, w);
    std::cout << v.str() << " ~ " << v.approx_str() << "\n";
    return 0;
}

// ------------------------------------------------------------- construct

int cmd_construct(const std::string& op, const std::vector<std::string>& args,
                  const std::string& truth_arg, const std::string& map_arg,
                  const std::string& out_path) {
    auto need_args = [&](std::size_t n) {
        if (args.size() != n)
            throw std::invalid_argument("construct " + op + " takes " + std::to_string(n) +
                                        " automaton file(s)");
    };
    auto need_truth = [&]() {
        if (truth_arg.empty())
            throw std::invalid_argument("construct " + op + " needs --truth <t,f,u,e>");
        if (truth_arg.front() != '<') return parse_truth("<" + truth_arg + ">");
        return parse_truth(truth_arg);
    };
    auto parse_map = [&](const Alphabet& target_hint, bool source_side) {
        if (map_arg.empty())
            throw std::invalid_argument("construct " + op + " needs --map a>b;c>d");
        StrictAlphabeticHom h;
        std::size_t p = 0;
        std::vector<std::pair<std::string, std::string>> pairs;
        while (p < map_arg.size()) {
            auto semi = map_arg.find(';', p);
            std::string pair =
                map_arg.substr(p, semi == std::string::npos ? semi : semi - p);
            auto gt = pair.find('>');
            if (gt == std::string::npos)
                throw std::invalid_argument("map entries look like src>dst");
            pairs.push_back({pair.substr(0, gt), pair.substr(gt + 1)});
            p = semi == std::string::npos ? map_arg.size() : semi + 1;
        }
        for (const auto& [src, dst] : pairs) {
            if (h.source.find(src))
                throw std::invalid_argument("map repeats source letter " + src);
            h.source.letters.push_back(src);
        }
        if (source_side) {
            // hint is the hom's target alphabet
            h.target = target_hint;
        } else {
            for (const auto& [src, dst] : pairs)
                if (!h.target.find(dst)) h.target.letters.push_back(dst);
        }
        for (const auto& [src, dst] : pairs) {
            auto t = h.target.find(dst);
            if (!t)
                throw std::invalid_argument("map target letter '" + dst +
                                            "' is outside the target alphabet");
            h.map.push_back(*t);
        }
        return h;
    };

    if (op == "char") {
        need_args(1);
        write_output(serialize(char_automaton(load_classical(args[0]))), out_path);
    } else if (op == "disjunction") {
        need_args(2);
        write_output(serialize(disjunction(load_mk(args[0]), load_mk(args[1]))), out_path);
    } else if (op == "conj-char") {
        need_args(2);
        write_output(serialize(conj_char(load_classical(args[0]), load_mk(args[1]))),
                     out_path);
    } else if (op == "hom-image") {
        need_args(1);
        MkAutomaton a = load_mk(args[0]);
        StrictAlphabeticHom h = parse_map(Alphabet{}, false);
        write_output(serialize(hom_image(a, h)), out_path);
    } else if (op == "inv-hom") {
        need_args(1);
        MkAutomaton a = load_mk(args[0]);
        StrictAlphabeticHom h = parse_map(a.alphabet, true);
        write_output(serialize(inv_hom(a, h)), out_path);
    } else if (op == "scalar-left") {
        need_args(1);
        MkAutomaton a = load_mk(args[0]);
        ScalarLeftResult r = scalar_left(need_truth(), a);
        std::string text = serialize(r.automaton);
        text += "# discrepancy domain (words with no accepting path):\n";
        std::string line;
        for (char ch : serialize(r.discrepancy_domain)) {
            line.push_back(ch);
            if (ch == '\n') {
                text += "#   " + line;
                line.clear();
            }
        }
        if (r.initial_removed)
            text += "# note: scaled initial weight was ZERO; initial entry removed\n";
        write_output(text, out_path);
    } else if (op == "scalar-right") {
        need_args(1);
        write_output(serialize(scalar_right(load_mk(args[0]), need_truth())), out_path);
    } else if (op == "scalar-right-normalized") {
        need_args(1);
        write_output(serialize(scalar_right_normalized(load_mk(args[0]), need_truth())),
                     out_path);
    } else if (op == "normalize") {
        need_args(1);
        write_output(serialize(normalize(load_mk(args[0]))), out_path);
    } else if (op == "in-ter-one") {
        need_args(1);
        write_output(serialize(in_ter_one(load_mk(args[0]))), out_path);
    } else if (op == "cauchy") {
        need_args(2);
        write_output(serialize(cauchy(load_mk(args[0]), load_mk(args[1]))), out_path);
    } else if (op == "support") {
        need_args(1);
        write_output(serialize(strong_support(load_mk(args[0]))), out_path);
    } else if (op == "nivat-decompose") {
        need_args(1);
        if (out_path.empty())
            throw std::invalid_argument("nivat-decompose needs -o <prefix>");
        NivatData n = nivat_decompose(load_mk(args[0]));
        write_output(serialize(n.language), out_path + ".lang.mkfa");
        std::string table;
        for (Letter b = 0; b < n.inner.size(); ++b)
            table += "letter " + n.inner.letters[b] + " weight " +
                     n.letter_weight[b].str() + " hom " +
                     n.hom.target.letters[n.hom.map[b]] + "\n";
        write_output(table, out_path + ".nivat");
        std::cout << "wrote " << out_path << ".lang.mkfa and " << out_path << ".nivat\n";
    } else if (op == "nivat-compose") {
        need_args(1);
        const std::string& prefix = args[0];
        ParsedAutomaton lang = parse_automaton_file(prefix + ".lang.mkfa");
        if (lang.kind != ParsedAutomaton::Kind::Classical)
            throw FormatError(prefix + ".lang.mkfa: expected a classical automaton");
        NivatData n;
        n.language = lang.classical;
        n.inner = lang.classical.alphabet;
        n.letter_weight.assign(n.inner.size(), truth_one());
        n.hom.source = n.inner;
        std::ifstream table(prefix + ".nivat");
        if (!table) throw FormatError("cannot open " + prefix + ".nivat");
        std::vector<std::string> targets(n.inner.size());
        std::string tag, letter, kw1, weight, kw2, target;
        while (table >> tag >> letter >> kw1 >> weight >> kw2 >> target) {
            if (tag != "letter" || kw1 != "weight" || kw2 != "hom")
                throw FormatError(prefix + ".nivat: bad table line");
            auto b = n.inner.find(letter);
            if (!b) throw FormatError(prefix + ".nivat: unknown inner letter " + letter);
            n.letter_weight[*b] = parse_truth(weight);
            targets[*b] = target;
        }
        for (const auto& t : targets) {
            if (t.empty()) throw FormatError(prefix + ".nivat: incomplete hom table");
            if (!n.hom.target.find(t)) n.hom.target.letters.push_back(t);
        }
        for (Letter b = 0; b < n.inner.size(); ++b)
            n.hom.map.push_back(*n.hom.target.find(targets[b]));
        write_output(serialize(nivat_compose(n)), out_path);
    } else {
        throw std::invalid_argument("unknown construction '" + op + "'");
    }
    return 0;
}

// ----------------------------------------------------------------- logic

int cmd_logic(const std::string& sub, std::string formula_text,
              const std::string& file, const std::string& word_text,
              const std::string& alphabet_csv, const std::vector<std::string>& vars,
              const std::string& out_path) {
    auto parse_alphabet = [&]() {
        Alphabet a;
        std::string cur;
        for (char c : alphabet_csv) {
            if (c == ',') {
                if (!cur.empty()) a.letters.push_back(cur), cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) a.letters.push_back(cur);
        if (a.letters.empty())
            throw std::invalid_argument("logic " + sub + " needs --alphabet a,b");
        return a;
    };
    if (formula_text == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        formula_text = buf.str();
        while (!formula_text.empty() &&
               (formula_text.back() == '\n' || formula_text.back() == ' '))
            formula_text.pop_back();
    }
    if (sub == "parse") {
        MkPtr f = parse_mk(formula_text);
        std::cout << mk_str(f) << "\n";
        return 0;
    }
    if (sub == "check-rmso") {
        MkPtr f = parse_mk(formula_text);
        RmsoCheck c = is_rmso(f);
        if (c.ok) {
            std::cout << "RMSO\n";
            return 0;
        }
        std::cout << "not RMSO:\n";
        for (const auto& v : c.violations) std::cout << "  " << v << "\n";
        return 1;
    }
    if (sub == "eval") {
        MkPtr f = parse_mk(formula_text);
        if (!free_vars(f).empty())
            throw std::invalid_argument(
                "logic eval takes sentences; compile open formulas instead");
        Alphabet a = parse_alphabet();
        Word w = word_from_string(a, word_text);
        TruthValue v = mk_eval(a, {}, w, {}, f);
        std::cout << v.str() << " ~ " << v.approx_str() << "\n";
        return 0;
    }
    if (sub == "compile") {
        MkPtr f = parse_mk(formula_text);
        Alphabet a = parse_alphabet();
        std::vector<std::string> V = vars;
        for (const auto& v : free_vars(f))
            if (std::find(V.begin(), V.end(), v) == V.end()) V.push_back(v);
        RmsoCompiled out = rmso_to_automaton(f, a, V);
        write_output(serialize(out.automaton), out_path);
        return 0;
    }
    if (sub == "decompile") {
        if (file.empty()) throw std::invalid_argument("logic decompile needs a file");
        RmsoSentence s = automaton_to_rmso(load_mk(file));
        std::cout << mk_str(s.sentence) << "\n";
        return 0;
    }
    throw std::invalid_argument("unknown logic subcommand '" + sub + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MK-fuzzy automata toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    GlobalOpts g;
    app.add_option("--seed", g.seed, "random seed for verify/probe");
    app.add_option("--maxlen", g.maxlen, "word-length cap for sweeps and supports");
    app.add_option("--trials", g.trials, "instances per verify suite");
    app.add_option("--budget", g.budget, "instances per probe");
    app.add_option("--format", g.format, "text|records");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate an automaton or expression");
    std::string eval_file, eval_expr, eval_word;
    bool eval_support = false;
    eval_cmd->add_option("file", eval_file, "automaton file (mk kind)");
    eval_cmd->add_option("word", eval_word, "input word ('' for the empty word)");
    eval_cmd->add_option("--expr", eval_expr, "language expression instead of a file");
    eval_cmd->add_flag("--stgsupp", eval_support, "list the strong support up to --maxlen");

    // construct
    auto* con_cmd = app.add_subcommand("construct", "build an automaton");
    std::string con_op, con_truth, con_map, con_out;
    std::vector<std::string> con_args;
    con_cmd->add_option("op", con_op, "construction name")->required();
    con_cmd->add_option("args", con_args, "input files / prefix");
    con_cmd->add_option("--truth", con_truth, "scalar <t,f,u,e> for scalar ops");
    con_cmd->add_option("--map", con_map, "letter map a>b;c>d for hom ops");
    con_cmd->add_option("-o,--out", con_out, "output file (default stdout)");

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "run an oracle-sweep suite");
    std::string ver_suite;
    ver_cmd->add_option("suite", ver_suite, "suite name or 'all'")->required();

    // probe
    auto* probe_cmd = app.add_subcommand("probe", "search a documented gap");
    std::string probe_gap;
    probe_cmd->add_option("gap", probe_gap, "gap name")->required();

    // logic
    auto* logic_cmd = app.add_subcommand("logic", "parse/eval/compile/decompile/check-rmso");
    std::string lg_sub, lg_formula, lg_file, lg_word, lg_alphabet, lg_out;
    std::vector<std::string> lg_vars;
    logic_cmd->add_option("sub", lg_sub, "subcommand")->required();
    logic_cmd->add_option("formula", lg_formula, "formula text ('-' for stdin)");
    logic_cmd->add_option("--file", lg_file, "automaton file for decompile");
    logic_cmd->add_option("--word", lg_word, "word for eval");
    logic_cmd->add_option("--alphabet", lg_alphabet, "comma-separated base letters");
    logic_cmd->add_option("--var", lg_vars, "extra variable rows for compile");
    logic_cmd->add_option("-o,--out", lg_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval_cmd->parsed())
            return cmd_eval(g, eval_file, eval_expr, eval_word, eval_support);
        if (con_cmd->parsed()) return cmd_construct(con_op, con_args, con_truth, con_map, con_out);
        if (ver_cmd->parsed()) {
            harness::Options opt{g.maxlen, g.trials, g.seed, g.budget};
            auto sink = [&](const harness::Report& r) { print_report(r, g.format); };
            int failures = 0;
            if (ver_suite == "all") {
                for (const auto& name : harness::suite_names())
                    failures += harness::run_suite(name, opt, sink);
            } else {
                failures = harness::run_suite(ver_suite, opt, sink);
            }
            std::cout << (failures == 0 ? "verify: all checks passed\n"
                                        : "verify: " + std::to_string(failures) +
                                              " failures\n");
            return failures == 0 ? 0 : 1;
        }
        if (probe_cmd->parsed()) {
            harness::Options opt{g.maxlen, g.trials, g.seed, g.budget};
            auto sink = [&](const harness::Report& r) { print_report(r, g.format); };
            int found = harness::run_probe(probe_gap, opt, sink);
            std::cout << "probe " << probe_gap << ": " << found << " counterexample(s)\n";
            return 0;
        }
        if (logic_cmd->parsed())
            return cmd_logic(lg_sub, lg_formula, lg_file, lg_word, lg_alphabet, lg_vars,
                             lg_out);
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ForeignLetterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
