// stepltl — command-line front-end for the step-LTL toolkit.
//
// Exit codes: 0 for true/member/success verdicts, 1 for false/unknown/
// non-member verdicts, 2 for usage or input errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stepltl/stepltl.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read file '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// One inline/file option pair resolved to text.
std::string resolve_input(const std::string& inline_text, const std::string& file,
                          const char* what) {
    if (!inline_text.empty() && !file.empty())
        throw std::runtime_error(std::string("give ") + what + " inline or as a file, not both");
    if (!inline_text.empty()) return inline_text;
    if (!file.empty()) return read_file(file);
    throw std::runtime_error(std::string("missing ") + what);
}

stepltl::Valuation parse_bindings(const std::vector<std::string>& bindings) {
    stepltl::Valuation v;
    for (const auto& b : bindings) {
        auto eq = b.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::runtime_error("binding must look like k=3: '" + b + "'");
        std::string name = b.substr(0, eq);
        std::string value = b.substr(eq + 1);
        std::size_t used = 0;
        std::uint64_t n = std::stoull(value, &used);
        if (used != value.size())
            throw std::runtime_error("binding value must be a natural: '" + b + "'");
        v[name] = n;
    }
    return v;
}

const char* verdict_text(stepltl::Verdict3 v) {
    switch (v) {
        case stepltl::Verdict3::True: return "true";
        case stepltl::Verdict3::False: return "false";
        default: return "unknown";
    }
}

int run_eval(const std::string& formula_text, const std::string& word_text,
             bool bounded, std::uint64_t B, std::uint64_t H,
             const std::vector<std::string>& bindings) {
    stepltl::Formula f = stepltl::parse_formula(formula_text);
    stepltl::LassoWord w = stepltl::parse_lasso(word_text);
    stepltl::Valuation v = parse_bindings(bindings);
    if (bounded) {
        stepltl::Verdict3 verdict =
            stepltl::eval_bounded(f, w, 0, v, stepltl::Bounds{B, H});
        std::cout << verdict_text(verdict) << "\n";
        return verdict == stepltl::Verdict3::True ? 0 : 1;
    }
    stepltl::Formula pnf = stepltl::to_pnf(f);
    bool verdict = stepltl::holds_exact(pnf, w, v);
    std::cout << (verdict ? "true" : "false") << "\n";
    return verdict ? 0 : 1;
}

int run_encode(const std::string& peano_text, bool hoist) {
    stepltl::PeanoFormula f = stepltl::parse_peano(peano_text);
    stepltl::Formula translated = stepltl::translate(f, hoist);
    std::cout << stepltl::render_formula(translated) << "\n";
    return 0;
}

int run_refute(const std::string& automaton_text) {
    stepltl::NBA a = stepltl::parse_nba(automaton_text);
    stepltl::RefutationWitness wit = stepltl::refute_recognizer(a);
    if (wit.kind == stepltl::RefutationWitness::Kind::RejectedMember) {
        std::cout << "WITNESS kind=RejectedMember k=" << wit.k << "\n";
        std::cout << "WORD " << stepltl::render_lasso(wit.word) << "\n";
        std::cout << "rejected although p holds at every multiple of " << wit.k << "\n";
    } else {
        const auto& pump = *wit.pump;
        std::cout << "WITNESS kind=AcceptedNonMember m=" << pump.m
                  << " blockStart=" << pump.block_start << " i=" << pump.i
                  << " j=" << pump.j << " ell=" << pump.ell << "\n";
        std::cout << "WORD " << stepltl::render_lasso(wit.word) << "\n";
        std::cout << "RUN cycleStart=" << wit.run->cycle_start << " states=";
        for (std::size_t i = 0; i < wit.run->states.size(); ++i) {
            if (i) std::cout << " ";
            std::cout << wit.run->states[i];
        }
        std::cout << "\n";
        std::cout << "accepted although p has no period along the word\n";
    }
    return 0;
}

int run_pk(std::uint64_t k, const std::string& output) {
    std::string text = stepltl::render_nba(stepltl::pk_automaton(k));
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) throw std::runtime_error("cannot write file '" + output + "'");
        out << text;
    }
    return 0;
}

int run_member(const std::string& automaton_text, const std::string& word_text) {
    stepltl::NBA a = stepltl::parse_nba(automaton_text);
    stepltl::LassoWord w = stepltl::parse_lasso(word_text);
    auto run = stepltl::nba_member(a, w);
    if (!run) {
        std::cout << "non-member\n";
        return 1;
    }
    std::cout << "member\n";
    std::cout << "RUN cycleStart=" << run->cycle_start << " states=";
    for (std::size_t i = 0; i < run->states.size(); ++i) {
        if (i) std::cout << " ";
        std::cout << run->states[i];
    }
    std::cout << "\n";
    return 0;
}

int run_check(const std::string& formula_text) {
    stepltl::Formula f = stepltl::parse_formula(formula_text);
    std::cout << "ok\n";
    std::cout << "formula: " << stepltl::render_formula(f) << "\n";
    auto free = stepltl::free_step_vars(f);
    if (!free.empty()) {
        std::cout << "free:";
        for (const auto& k : free) std::cout << " " << k;
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toolkit for LTL with step variables and step quantifiers"};
    app.require_subcommand(1);

    // eval
    std::string eval_formula, eval_formula_file, eval_word, eval_word_file;
    bool eval_exact = false, eval_bounded_mode = false;
    std::uint64_t eval_B = 10, eval_H = 500;
    std::vector<std::string> eval_bindings;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula on a lasso word");
    eval_cmd->add_option("-f,--formula", eval_formula, "formula text");
    eval_cmd->add_option("--formula-file", eval_formula_file, "formula file");
    eval_cmd->add_option("-w,--word", eval_word, "word text");
    eval_cmd->add_option("--word-file", eval_word_file, "word file");
    eval_cmd->add_flag("--exact", eval_exact, "exact decision (default)");
    eval_cmd->add_flag("--bounded", eval_bounded_mode, "bounded semantics");
    eval_cmd->add_option("-B,--bound", eval_B, "quantifier bound for --bounded");
    eval_cmd->add_option("-H,--horizon", eval_H, "scan horizon for --bounded");
    eval_cmd->add_option("--bind", eval_bindings, "free-variable binding k=N")
        ->take_all();

    // encode
    std::string encode_peano, encode_peano_file;
    bool encode_hoist = false;
    auto* encode_cmd =
        app.add_subcommand("encode", "Translate arithmetic into the core fragment");
    encode_cmd->add_option("-p,--peano", encode_peano, "arithmetic formula text");
    encode_cmd->add_option("--peano-file", encode_peano_file, "arithmetic formula file");
    encode_cmd->add_flag("--hoist", encode_hoist,
                         "emit the word constraints once instead of per atom");

    // refute
    std::string refute_automaton;
    auto* refute_cmd = app.add_subcommand(
        "refute", "Produce a witness that an automaton misses the union of P(k)");
    refute_cmd->add_option("-a,--automaton", refute_automaton, "automaton file")
        ->required();

    // pk
    std::uint64_t pk_k = 0;
    std::string pk_output;
    auto* pk_cmd = app.add_subcommand("pk", "Emit the P(k) automaton");
    pk_cmd->add_option("-k", pk_k, "period k >= 1")->required();
    pk_cmd->add_option("-o,--output", pk_output, "output file (default stdout)");

    // member
    std::string member_automaton, member_word, member_word_file;
    auto* member_cmd = app.add_subcommand("member", "Test lasso-word membership");
    member_cmd->add_option("-a,--automaton", member_automaton, "automaton file")
        ->required();
    member_cmd->add_option("-w,--word", member_word, "word text");
    member_cmd->add_option("--word-file", member_word_file, "word file");

    // check
    std::string check_formula, check_formula_file;
    auto* check_cmd = app.add_subcommand("check", "Parse and scope-check a formula");
    check_cmd->add_option("-f,--formula", check_formula, "formula text");
    check_cmd->add_option("--formula-file", check_formula_file, "formula file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval_cmd->parsed()) {
            if (eval_exact && eval_bounded_mode)
                throw std::runtime_error("--exact and --bounded are mutually exclusive");
            return run_eval(resolve_input(eval_formula, eval_formula_file, "formula"),
                            resolve_input(eval_word, eval_word_file, "word"),
                            eval_bounded_mode, eval_B, eval_H, eval_bindings);
        }
        if (encode_cmd->parsed())
            return run_encode(resolve_input(encode_peano, encode_peano_file, "formula"),
                              encode_hoist);
        if (refute_cmd->parsed()) return run_refute(read_file(refute_automaton));
        if (pk_cmd->parsed()) return run_pk(pk_k, pk_output);
        if (member_cmd->parsed())
            return run_member(read_file(member_automaton),
                              resolve_input(member_word, member_word_file, "word"));
        if (check_cmd->parsed())
            return run_check(resolve_input(check_formula, check_formula_file, "formula"));
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
