#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "eulerstack/json_io.hpp"
#include "eulerstack/lawcheck.hpp"

namespace es = eulerstack;

namespace {

es::WeightFunction weight_by_name(const std::string& name) {
    if (name == "naive") return es::WeightFunction::naive();
    if (name == "e") return es::WeightFunction::e();
    if (name == "inv-e") return es::WeightFunction::inv_e();
    if (name == "o") return es::WeightFunction::o();
    throw CLI::ValidationError("--weight", "unknown weight '" + name + "'");
}

// Success envelope for --json mode.
void emit(bool json_mode, const std::string& command, const es::Json& inputs,
          const es::Json& result, const std::string& text) {
    if (json_mode) {
        es::Json envelope;
        envelope["command"] = command;
        envelope["inputs"] = inputs;
        envelope["result"] = result;
        std::cout << envelope.dump(2) << "\n";
    } else {
        std::cout << text << "\n";
    }
}

void write_or_print(const es::Json& j, const std::string& out_path, bool json_mode,
                    const std::string& command, const es::Json& inputs) {
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out)
            throw es::Error(es::ErrorCode::Parse, "cannot write '" + out_path + "'");
        out << j.dump(2) << "\n";
        emit(json_mode, command, inputs, es::Json{{"written", out_path}}, "wrote " + out_path);
    } else {
        emit(json_mode, command, inputs, j, j.dump(2));
    }
}

struct CliOptions {
    bool json_mode = false;

    std::string chi_stack, chi_fn, chi_weight = "naive";
    std::string push_morphism, push_fn, push_mode = "naive", push_out;
    bool push_lcf = false;
    std::string pull_morphism, pull_fn, pull_out;
    std::string compose_m1, compose_m2, compose_out;
    std::string fibprod_phi, fibprod_psi, fibprod_prefix;
    std::string stringy_gset;
    bool stringy_check = false;
    std::string check_suite = "all";
    std::uint64_t check_seed = 42;
    int check_cases = 100;
};

int run_chi(const CliOptions& opt) {
    es::StackPtr stack = es::load_stack(opt.chi_stack);
    // Without a function, measure the union of the listed strata.
    es::ConstructibleFn f = opt.chi_fn.empty()
                                ? es::ConstructibleFn::indicator(es::full_set(stack))
                                : es::load_fn(opt.chi_fn);
    if (!opt.chi_fn.empty() && *f.stack() != *stack)
        throw es::Error(es::ErrorCode::StackMismatch,
                        "function in '" + opt.chi_fn + "' lives on a different stack");
    es::Rational value = es::chi_weighted(f, weight_by_name(opt.chi_weight));
    es::Json inputs{{"stack", opt.chi_stack}, {"weight", opt.chi_weight}};
    if (!opt.chi_fn.empty()) inputs["fn"] = opt.chi_fn;
    emit(opt.json_mode, "chi", inputs, value.str(), value.str());
    return 0;
}

int run_push(const CliOptions& opt) {
    es::StackMorphism m = es::load_morphism(opt.push_morphism);
    es::ConstructibleFn f = es::load_fn(opt.push_fn);
    es::ConstructibleFn pushed = [&] {
        if (opt.push_lcf) {
            if (opt.push_mode == "naive") return es::pushforward_lcf(m, f, es::LcfMode::Naive);
            if (opt.push_mode == "stk") return es::pushforward_lcf(m, f, es::LcfMode::Stack);
            throw CLI::ValidationError("--mode", "--lcf supports modes naive and stk");
        }
        if (opt.push_mode == "naive") return es::pushforward_naive(m, f);
        if (opt.push_mode == "stk") return es::pushforward_stack(m, f);
        if (opt.push_mode.rfind("w:", 0) == 0)
            return es::pushforward_weighted(m, f, weight_by_name(opt.push_mode.substr(2)));
        throw CLI::ValidationError("--mode",
                                   "expected naive, stk or w:<weight>, got '" +
                                       opt.push_mode + "'");
    }();
    es::Json inputs{{"morphism", opt.push_morphism},
                    {"fn", opt.push_fn},
                    {"mode", opt.push_mode},
                    {"lcf", opt.push_lcf}};
    write_or_print(es::fn_to_json(pushed), opt.push_out, opt.json_mode, "push", inputs);
    return 0;
}

int run_pull(const CliOptions& opt) {
    es::StackMorphism m = es::load_morphism(opt.pull_morphism);
    es::ConstructibleFn f = es::load_fn(opt.pull_fn);
    es::ConstructibleFn pulled = es::pullback(m, f);
    es::Json inputs{{"morphism", opt.pull_morphism}, {"fn", opt.pull_fn}};
    write_or_print(es::fn_to_json(pulled), opt.pull_out, opt.json_mode, "pull", inputs);
    return 0;
}

int run_compose(const CliOptions& opt) {
    es::StackMorphism m1 = es::load_morphism(opt.compose_m1);
    es::StackMorphism m2 = es::load_morphism(opt.compose_m2);
    es::StackMorphism m = es::compose(m1, m2);
    es::Json inputs{{"m1", opt.compose_m1}, {"m2", opt.compose_m2}};
    write_or_print(es::morphism_to_json(m), opt.compose_out, opt.json_mode, "compose", inputs);
    return 0;
}

int run_fibprod(const CliOptions& opt) {
    es::StackMorphism phi = es::load_morphism(opt.fibprod_phi);
    es::StackMorphism psi = es::load_morphism(opt.fibprod_psi);
    es::CartesianSquare square = es::fiber_product(phi, psi);
    es::Json inputs{{"phi", opt.fibprod_phi}, {"psi", opt.fibprod_psi}};
    es::Json e = es::stack_to_json(*square.e);
    es::Json eta = es::morphism_to_json(square.eta);
    es::Json theta = es::morphism_to_json(square.theta);
    if (!opt.fibprod_prefix.empty()) {
        for (const auto& [suffix, doc] :
             {std::pair<std::string, const es::Json*>{".e.json", &e},
              {".eta.json", &eta},
              {".theta.json", &theta}}) {
            std::string path = opt.fibprod_prefix + suffix;
            std::ofstream out(path);
            if (!out) throw es::Error(es::ErrorCode::Parse, "cannot write '" + path + "'");
            out << doc->dump(2) << "\n";
        }
        emit(opt.json_mode, "fibprod", inputs,
             es::Json{{"written_prefix", opt.fibprod_prefix}},
             "wrote " + opt.fibprod_prefix + ".{e,eta,theta}.json");
    } else {
        es::Json all{{"e", e}, {"eta", eta}, {"theta", theta}};
        emit(opt.json_mode, "fibprod", inputs, all, all.dump(2));
    }
    return 0;
}

int run_stringy(const CliOptions& opt) {
    es::FiniteGSet gset = es::load_gset(opt.stringy_gset);
    es::Json inputs{{"gset", opt.stringy_gset}, {"check", opt.stringy_check}};
    if (!opt.stringy_check) {
        es::Rational value = es::stringy_euler(gset);
        emit(opt.json_mode, "stringy", inputs, value.str(), value.str());
        return 0;
    }
    es::DhvwReport report = es::check_dhvw(gset);
    es::Json result{{"commuting_pair_side", report.commuting_pair_side.str()},
                    {"orbifold_side", report.orbifold_side.str()},
                    {"equal", report.ok}};
    if (report.ok) {
        emit(opt.json_mode, "stringy", inputs, result,
             "chi(M,G) = " + report.commuting_pair_side.str() + " = chi_orb");
        return 0;
    }
    emit(opt.json_mode, "stringy", inputs, result,
         "chi(M,G) = " + report.commuting_pair_side.str() +
             " != chi_orb = " + report.orbifold_side.str());
    return 1;
}

int run_check(const CliOptions& opt) {
    namespace lc = es::lawcheck;
    std::vector<lc::Suite> suites;
    if (opt.check_suite == "all") {
        suites = lc::all_suites();
    } else if (auto s = lc::suite_by_name(opt.check_suite)) {
        suites = {*s};
    } else {
        throw CLI::ValidationError("--suite", "unknown suite '" + opt.check_suite + "'");
    }
    std::vector<lc::SuiteResult> results;
    for (lc::Suite s : suites)
        results.push_back(lc::run_suite(s, opt.check_seed, opt.check_cases));
    int failed = 0;
    for (const auto& r : results) failed += r.failed;
    es::Json inputs{{"suite", opt.check_suite},
                    {"seed", opt.check_seed},
                    {"cases", opt.check_cases}};
    es::Json result = es::Json::array();
    for (const auto& r : results) result.push_back(lc::result_to_json(r));
    emit(opt.json_mode, "check", inputs, result, lc::render_report(results));
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculus of constructible functions on stratified stacks"};
    app.require_subcommand(1);
    CliOptions opt;
    app.add_flag("--json", opt.json_mode, "emit a machine-readable result envelope");

    if (const char* env_seed = std::getenv("EULERSTACK_SEED"))
        opt.check_seed = std::strtoull(env_seed, nullptr, 10);

    auto* chi = app.add_subcommand("chi", "Euler characteristic of a stack or function");
    chi->add_option("stack", opt.chi_stack, "stack JSON file")->required();
    chi->add_option("-f,--fn", opt.chi_fn, "constructible function JSON file");
    chi->add_option("--weight", opt.chi_weight, "naive|e|inv-e|o (default naive)");

    auto* push = app.add_subcommand("push", "push a function forward along a morphism");
    push->add_option("morphism", opt.push_morphism, "morphism JSON file")->required();
    push->add_option("fn", opt.push_fn, "function JSON file")->required();
    push->add_option("--mode", opt.push_mode, "naive|w:<weight>|stk (default naive)");
    push->add_flag("--lcf", opt.push_lcf, "locally constructible pushforward");
    push->add_option("-o,--out", opt.push_out, "write the result here");

    auto* pull = app.add_subcommand("pull", "pull a function back along a morphism");
    pull->add_option("morphism", opt.pull_morphism, "morphism JSON file")->required();
    pull->add_option("fn", opt.pull_fn, "function JSON file")->required();
    pull->add_option("-o,--out", opt.pull_out, "write the result here");

    auto* comp = app.add_subcommand("compose", "compose two morphisms");
    comp->add_option("m1", opt.compose_m1, "first morphism (applied first)")->required();
    comp->add_option("m2", opt.compose_m2, "second morphism")->required();
    comp->add_option("-o,--out", opt.compose_out, "write the result here");

    auto* fib = app.add_subcommand("fibprod", "fiber product of two morphisms");
    fib->add_option("phi", opt.fibprod_phi, "representable morphism F -> H")->required();
    fib->add_option("psi", opt.fibprod_psi, "morphism G -> H")->required();
    fib->add_option("-o,--out-prefix", opt.fibprod_prefix,
                    "write PREFIX.e.json, PREFIX.eta.json, PREFIX.theta.json");

    auto* stringy = app.add_subcommand("stringy", "stringy Euler characteristic of a G-set");
    stringy->add_option("gset", opt.stringy_gset, "G-set JSON file")->required();
    stringy->add_flag("--check", opt.stringy_check,
                      "also compare against chi_orb of the quotient stack");

    auto* check = app.add_subcommand("check", "run seeded property suites");
    check->add_option("--suite", opt.check_suite,
                      "weights|conservation|functoriality|stack-functoriality|inv-e-agreement|"
                      "cartesian|dhvw|integrality|lcf-functoriality|all");
    check->add_option("--seed", opt.check_seed, "generator seed (env EULERSTACK_SEED)");
    check->add_option("--cases", opt.check_cases, "cases per suite")->check(CLI::PositiveNumber);

    // Let --json appear after the subcommand arguments too.
    for (CLI::App* sub : {chi, push, pull, comp, fib, stringy, check}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(chi)) return run_chi(opt);
        if (app.got_subcommand(push)) return run_push(opt);
        if (app.got_subcommand(pull)) return run_pull(opt);
        if (app.got_subcommand(comp)) return run_compose(opt);
        if (app.got_subcommand(fib)) return run_fibprod(opt);
        if (app.got_subcommand(stringy)) return run_stringy(opt);
        if (app.got_subcommand(check)) return run_check(opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const es::Error& e) {
        if (opt.json_mode) {
            es::Json envelope;
            envelope["command"] = app.get_subcommands().empty()
                                      ? ""
                                      : app.get_subcommands().front()->get_name();
            envelope["error"] =
                es::Json{{"code", es::error_code_name(e.code())}, {"message", e.what()}};
            std::cout << envelope.dump(2) << "\n";
        } else {
            std::cerr << e.what() << "\n";
        }
        return e.code() == es::ErrorCode::Parse ? 2 : 1;
    }
    return 2;
}
