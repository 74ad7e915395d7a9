#include "confl/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "confl/certificate_io.hpp"
#include "confl/cops.hpp"
#include "confl/criteria.hpp"

namespace confl {

namespace {

std::string verdict_text(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "YES";
        case Verdict::No: return "NO";
        case Verdict::Maybe: return "MAYBE";
    }
    return "MAYBE";
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"confluence prover for first-order term rewrite systems"};
    std::string criterion = "auto";
    std::string file;
    SearchConfig cfg;
    unsigned timeout_seconds = 0;
    bool proof = false, json_output = false;

    app.add_option("file", file, "problem file in COPS TRS format")->required();
    app.add_option("--criterion", criterion, "criterion to apply")
        ->check(CLI::IsMember({"auto", "kb", "sc", "dc", "gsc", "cpcs", "hot"}));
    app.add_option("--max-steps", cfg.max_steps, "bound for directed reduction searches");
    app.add_option("--max-conversion", cfg.max_conversion_length,
                   "bound for conversion searches");
    app.add_option("--max-levels", cfg.max_precedence_levels, "number of precedence levels");
    app.add_option("--cpcs-depth", cfg.max_cpcs_depth, "maximum subsystem nesting depth");
    app.add_option("--timeout", timeout_seconds, "wall-clock limit in seconds");
    app.add_flag("--proof", proof, "print a replayable certificate");
    app.add_flag("--json", json_output, "print a machine-readable report");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 1;
    }

    std::ifstream in(file);
    if (!in) {
        err << "cannot open " << file << '\n';
        return 1;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    Trs trs;
    try {
        trs = parse_cops(buffer.str());
    } catch (const Error& e) {
        err << "parse error: " << e.what() << '\n';
        return 1;
    }

    try {
        cfg.validate();
        if (timeout_seconds > 0)
            cfg.deadline =
                std::chrono::steady_clock::now() + std::chrono::seconds(timeout_seconds);

        RunStats stats;
        const auto start = std::chrono::steady_clock::now();
        ProofOutcome outcome;
        if (criterion == "auto") {
            outcome = prove(trs, cfg, &stats);
        } else if (criterion == "kb") {
            outcome = check_knuth_bendix(trs, cfg, &stats);
        } else if (criterion == "sc") {
            outcome = check_strongly_closed(trs, cfg, &stats);
        } else if (criterion == "dc") {
            outcome = check_development_closed(trs, cfg, &stats);
        } else if (criterion == "gsc") {
            outcome = check_gsc(trs, cfg, &stats);
        } else if (criterion == "cpcs") {
            outcome = check_cpcs(trs, cfg, 0, &stats);
        } else {
            outcome = check_hot_decreasing(trs, cfg, &stats);
        }
        stats.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        out << verdict_text(outcome.verdict) << '\n';

        if (json_output) {
            nlohmann::json report;
            report["verdict"] = verdict_text(outcome.verdict);
            report["criterion"] = outcome.criterion;
            report["reason"] = outcome.reason;
            report["certificate"] = nullptr;
            report["witness"] = nullptr;
            if (outcome.certificate)
                report["certificate"] = split_lines(render_certificate(*outcome.certificate));
            if (outcome.witness)
                report["witness"] = split_lines(render_witness(*outcome.witness));
            report["stats"] = {{"peaks_examined", stats.peaks_examined},
                               {"subsystems_tried", stats.subsystems_tried},
                               {"elapsed", stats.elapsed_seconds}};
            out << report.dump(2) << '\n';
        } else if (proof) {
            if (outcome.certificate) {
                out << render_certificate(*outcome.certificate);
            } else if (outcome.witness) {
                out << render_witness(*outcome.witness);
            } else {
                out << "reason: " << outcome.reason << '\n';
            }
        }
        return 0;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace confl
