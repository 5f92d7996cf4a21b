// ogp: check, explore and transform annotated concurrent programs.
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource cap.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ogp/frontend.hpp"
#include "ogp/oracle.hpp"
#include "ogp/progress.hpp"
#include "ogp/report.hpp"
#include "ogp/transform.hpp"

namespace {

struct RunConfig {
    std::vector<std::string> files;
    std::size_t max_states = ogp::Limits{}.max_states;
    std::string format = "human";
    std::string property;
    std::string split, hoist, fresh;
};

std::size_t default_cap() {
    if (const char* env = std::getenv("OGP_MAX_STATES")) {
        try {
            const long long n = std::stoll(env);
            if (n > 0) return static_cast<std::size_t>(n);
        } catch (const std::exception&) {
        }
        std::cerr << "ignoring OGP_MAX_STATES=" << env << "\n";
    }
    return ogp::Limits{}.max_states;
}

ogp::Format format_of(const RunConfig& c) { return c.format == "machine" ? ogp::Format::Machine : ogp::Format::Human; }

ogp::Limits limits_of(const RunConfig& c) {
    ogp::Limits l;
    l.max_states = c.max_states;
    return l;
}

void banner(const RunConfig& c, const std::string& path) {
    if (c.files.size() > 1 && format_of(c) == ogp::Format::Human) std::cout << "== " << path << "\n";
}

int cmd_check(const RunConfig& c) {
    int rc = 0;
    for (const std::string& path : c.files) {
        banner(c, path);
        const ogp::SourceFile f = ogp::load(path);
        const ogp::CheckReport r = ogp::check_program(f.program, limits_of(c));
        std::cout << ogp::render_obligations(f.program, r.obligations, format_of(c));
        for (const std::string& e : r.errors) {
            if (format_of(c) == ogp::Format::Machine)
                std::cout << "error: " << e << "\n\n";
            else
                std::cout << "error: " << e << "\n";
        }
        if (!r.ok()) rc = 1;
    }
    return rc;
}

int cmd_oracle(const RunConfig& c) {
    int rc = 0;
    for (const std::string& path : c.files) {
        banner(c, path);
        const ogp::SourceFile f = ogp::load(path);
        const ogp::TransitionSystem ts = ogp::build_state_space(f.program, limits_of(c));
        const auto verdicts = ogp::oracle_properties(ts, f.program, c.property);
        std::vector<ogp::AssertionViolation> violations;
        if (c.property.empty()) violations = ogp::oracle_assertions(ts, f.program);
        std::cout << ogp::render_oracle(ts, verdicts, violations, format_of(c));
        for (const auto& v : verdicts)
            if (!v.result.holds) rc = 1;
        if (!violations.empty()) rc = 1;
    }
    return rc;
}

int cmd_instrument(const RunConfig& c) {
    for (const std::string& path : c.files) {
        banner(c, path);
        std::cout << ogp::print(ogp::load(path).program, {.counters = true});
    }
    return 0;
}

int cmd_obligations(const RunConfig& c) {
    int rc = 0;
    for (const std::string& path : c.files) {
        banner(c, path);
        const ogp::SourceFile f = ogp::load(path);
        std::vector<ogp::Obligation> obs;
        if (c.property.empty()) {
            ogp::CheckReport r = ogp::check_program(f.program, limits_of(c));
            obs = std::move(r.obligations);
            if (!r.errors.empty()) rc = 1;
        } else {
            obs = ogp::obligations_report(f.program, c.property, limits_of(c));
        }
        std::cout << ogp::render_obligations(f.program, obs, format_of(c));
        if (!ogp::all_valid(obs)) rc = 1;
    }
    return rc;
}

int cmd_transform(const RunConfig& c) {
    int rc = 0;
    for (const std::string& path : c.files) {
        banner(c, path);
        const ogp::SourceFile f = ogp::load(path);
        const ogp::SplitRequest req{c.split, ogp::parse_predicate(c.hoist, f.program), c.fresh};
        const ogp::SplitResult r = ogp::guard_conjunction_split(f.program, req, limits_of(c));
        const ogp::HarnessReport h = ogp::progress_equivalence(f.program, r.program, limits_of(c));
        std::cout << ogp::render_split(r, h, format_of(c));
        if (!r.ok()) rc = 1;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Owicki-Gries and progress checker for guarded-command programs"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.max_states = default_cap();

    auto common = [&](CLI::App* sub) {
        sub->add_option("files", cfg.files, "program files (.ogp)")->required()->check(CLI::ExistingFile);
        sub->add_option("--max-states", cfg.max_states, "state-space cap (default: $OGP_MAX_STATES or 1000000)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"human", "machine"}));
    };
    CLI::App* check = app.add_subcommand("check", "discharge every obligation of the annotation and proofs");
    common(check);
    CLI::App* oracle = app.add_subcommand("oracle", "decide the declared properties by state-space exploration");
    common(oracle);
    oracle->add_option("--property", cfg.property, "only this property");
    CLI::App* instrument = app.add_subcommand("instrument", "print the labelled program with explicit pc updates");
    common(instrument);
    CLI::App* obligations = app.add_subcommand("obligations", "list obligations with formulas");
    common(obligations);
    obligations->add_option("--property", cfg.property, "only this property");
    CLI::App* transform = app.add_subcommand("transform", "split a conjunctive guard");
    common(transform);
    transform->add_option("--split", cfg.split, "site of the atomic guarded statement, e.g. A.1")->required();
    transform->add_option("--hoist", cfg.hoist, "conjunct to evaluate first")->required();
    transform->add_option("--fresh", cfg.fresh, "label for the second half (default: chosen)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*check) return cmd_check(cfg);
        if (*oracle) return cmd_oracle(cfg);
        if (*instrument) return cmd_instrument(cfg);
        if (*obligations) return cmd_obligations(cfg);
        if (*transform) return cmd_transform(cfg);
    } catch (const ogp::ResourceError& e) {
        std::cout.flush();
        std::cerr << "ogp: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cout.flush();
        std::cerr << "ogp: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
