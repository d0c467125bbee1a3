// netbn: failure prediction for optical-network event logs.
//
// Subcommands cover the full pipeline: validate a signature matrix,
// augment it into a probabilistic model, export the estimated tables,
// answer queries, predict failures from a log stream, and synthesize
// demo logs.

#include <atomic>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netbn/augment.hpp"
#include "netbn/error.hpp"
#include "netbn/format.hpp"
#include "netbn/infer.hpp"
#include "netbn/ingest.hpp"
#include "netbn/model.hpp"
#include "netbn/model_io.hpp"
#include "netbn/predict.hpp"

namespace {

using namespace netbn;

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

// label or label=0|1; bare labels mean observed (1). Absence statements
// (=0) are only accepted when allow_absence is set.
Assignment parse_evidence(const std::string& text, const EventFailureMatrix& m,
                          bool allow_absence) {
    Assignment evidence;
    for (const auto& token : split_commas(text)) {
        std::string label = token;
        bool value = true;
        auto eq = token.find('=');
        if (eq != std::string::npos) {
            label = token.substr(0, eq);
            std::string rhs = token.substr(eq + 1);
            if (rhs == "1") {
                value = true;
            } else if (rhs == "0") {
                value = false;
            } else {
                throw ValidationError("evidence value '" + rhs + "' is not 0 or 1");
            }
        }
        auto event = m.find_event(label);
        if (!event) throw ValidationError("unknown event '" + label + "'");
        if (!value && !allow_absence)
            throw ValidationError("evidence '" + token +
                                  "' states absence; pass --allow-absence to use it");
        if (evidence.contains(event->index) && evidence.at(event->index) != value)
            throw ValidationError("conflicting evidence for event '" + label + "'");
        evidence.set(event->index, value);
    }
    return evidence;
}

std::vector<int> parse_query(const std::string& text, const EventFailureMatrix& m,
                             const Assignment& evidence) {
    std::vector<int> query;
    if (text.empty()) {
        for (const auto& e : m.events())
            if (!evidence.contains(e.index)) query.push_back(e.index);
        return query;
    }
    for (const auto& label : split_commas(text)) {
        auto event = m.find_event(label);
        if (!event) throw ValidationError("unknown event '" + label + "'");
        query.push_back(event->index);
    }
    return query;
}

EventFailureMatrix load_matrix_file(const std::string& path) {
    return parse_matrix(read_text_file(path), path);
}

void run_validate(const std::string& matrix_path) {
    auto m = load_matrix_file(matrix_path);
    std::cout << "matrix ok: " << m.failure_count() << " failures, "
              << m.event_count() << " events\n";
    std::cout << "start states:";
    for (const auto& e : start_states(m)) std::cout << ' ' << e.label;
    std::cout << '\n';
    for (const auto& f : m.failures()) {
        std::cout << f.label << ":";
        for (const auto& e : event_sequence(m, f)) std::cout << ' ' << e.label;
        std::cout << '\n';
    }
}

struct AugmentArgs {
    std::string matrix_path;
    std::string out_path;
    long long population = 10000;
    double k = 2.0;
    std::optional<double> a;
    std::string mode = "deterministic";
    std::optional<std::uint64_t> seed;
    int window = 2;
    std::string edges_path;
};

void run_augment(const AugmentArgs& args) {
    auto m = load_matrix_file(args.matrix_path);

    AugmentOptions options;
    options.k = args.k;
    options.a = args.a;
    options.population = args.population;
    options.mode =
        args.mode == "sampled" ? CountMode::sampled : CountMode::deterministic;
    options.seed = args.seed;
    options.window = args.window;
    if (!args.edges_path.empty()) {
        options.edges_text = read_text_file(args.edges_path);
        options.edges_source = args.edges_path;
    }

    Model model = augment_model(m, options);
    save_model_file(model, args.out_path);

    std::cout << "failure,count\n";
    for (const auto& f : m.failures())
        std::cout << f.label << ','
                  << model.provenance.population
                         .counts[static_cast<std::size_t>(f.index) - 1]
                  << '\n';
    std::cout << "total," << model.provenance.population.total << '\n';

    auto probs = event_probabilities(m, model.provenance.population);
    std::cout << "event,probability\n";
    for (const auto& e : m.events())
        std::cout << e.label << ','
                  << format_fixed6(probs[static_cast<std::size_t>(e.index) - 1])
                  << '\n';

    std::cout << "model written to " << args.out_path << '\n';
}

void run_export_cpt(const std::string& model_path, const std::string& out_path) {
    Model model = load_model_file(model_path);
    std::string csv = cpt_csv(model);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        write_text_file(out_path, csv);
        std::cout << "tables written to " << out_path << '\n';
    }
}

void print_zero_evidence_warning() {
    std::cerr << "warning: evidence has probability zero under the model; "
                 "reporting the all-zero tie-break assignment\n";
}

void run_query(const std::string& model_path, const std::string& evidence_text,
               const std::string& query_text, bool allow_absence, bool verbose) {
    Model model = load_model_file(model_path);
    Assignment evidence =
        parse_evidence(evidence_text, model.matrix, allow_absence);
    std::vector<int> query = parse_query(query_text, model.matrix, evidence);

    Prediction p = predict_failure(model, evidence, query);
    if (p.query.zero_evidence) print_zero_evidence_warning();

    std::cout << "OUTPUT:\n    "
              << render_assignment(p.query.assignment, model.matrix.events())
              << '\n';
    std::cout << "PREDICTION:\n    "
              << render_prediction(p.prediction, model.matrix.events(), p.failure)
              << '\n';
    std::cout << "score: " << format_fixed6(p.query.score) << '\n';

    if (verbose && !query.empty() && !p.query.zero_evidence) {
        Factor post = posterior(model.net, query, evidence);
        for (std::size_t i = 0; i < post.size(); ++i)
            std::cout << "Pr("
                      << render_assignment(post.assignment_at(i),
                                           model.matrix.events())
                      << ") = " << format_fixed6(post.values()[i]) << '\n';
        if (post.size() > 1) {
            std::size_t best = 0, second = 1;
            if (post.values()[second] > post.values()[best]) std::swap(best, second);
            for (std::size_t i = 2; i < post.size(); ++i) {
                if (post.values()[i] > post.values()[best]) {
                    second = best;
                    best = i;
                } else if (post.values()[i] > post.values()[second]) {
                    second = i;
                }
            }
            std::cout << "runner-up: "
                      << render_assignment(post.assignment_at(second),
                                           model.matrix.events())
                      << " mass " << format_fixed6(post.values()[second]) << '\n';
        }
    }
}

struct PredictArgs {
    std::string model_path;
    std::string log_path;
    std::string rules_path;
    bool follow = false;
    bool verbose = false;
    long long max_events = 0;
};

void run_predict(const PredictArgs& args) {
    Model model = load_model_file(args.model_path);
    RuleSet rules = args.rules_path.empty()
                        ? RuleSet::defaults(model.matrix.events())
                        : RuleSet::parse(read_text_file(args.rules_path),
                                         args.rules_path);

    Session session(model);
    long long seen = 0;
    bool warned_start = false;

    auto handle = [&](const LogRecord& record) {
        if (!record.timestamp_ok)
            std::cerr << "warning: line without timestamp: " << record.message
                      << '\n';
        if (!record.event) return true;
        Prediction p = session.observe(*record.event, record.timestamp_text);
        if (session.start_state_warning() && !warned_start) {
            std::cerr << "warning: first observed event " << *record.event
                      << " is not a start state; stream may begin mid-failure\n";
            warned_start = true;
        }
        if (p.query.zero_evidence) print_zero_evidence_warning();

        std::string observed;
        for (const auto& [ts, label] : session.history()) {
            (void)ts;
            if (!observed.empty()) observed += ',';
            observed += label;
        }
        std::cout << (record.timestamp_ok ? record.timestamp_text : "-") << '\t'
                  << "observed=" << observed << '\t'
                  << render_prediction(p.prediction, model.matrix.events(),
                                       p.failure)
                  << '\t' << "score=" << format_fixed6(p.query.score) << '\t'
                  << "zero_evidence=" << (p.query.zero_evidence ? 1 : 0) << '\n';

        if (args.verbose) {
            for (const auto& e : model.matrix.events()) {
                if (session.observed().contains(e.index)) continue;
                Factor marginal =
                    posterior(model.net, {e.index}, session.observed());
                std::cout << "    Pr(" << e.label
                          << "=1) = " << format_fixed6(marginal.values()[1])
                          << '\n';
            }
        }
        ++seen;
        return args.max_events == 0 || seen < args.max_events;
    };

    StreamStats stats;
    if (args.follow) {
        std::atomic<bool> stop{false};
        stats = follow_file(args.log_path, rules, stop, handle);
    } else {
        std::ifstream in(args.log_path, std::ios::binary);
        if (!in) throw Error("cannot open '" + args.log_path + "'");
        stats = for_each_record(in, rules, handle);
    }

    std::cerr << stats.lines << " lines, " << stats.matched << " matched\n";
    if (seen == 0) throw ValidationError("log contains no recognized events");
}

struct SynthArgs {
    std::string matrix_path;
    std::string failure_label;
    std::string base_text;
    int spacing = 1;
    std::string out_path;
};

void run_synth(const SynthArgs& args) {
    auto m = load_matrix_file(args.matrix_path);
    auto f = m.find_failure(args.failure_label);
    if (!f) throw ValidationError("unknown failure '" + args.failure_label + "'");

    std::time_t base = default_log_base();
    if (!args.base_text.empty()) {
        std::tm tm{};
        std::istringstream in(args.base_text);
        in >> std::get_time(&tm, "%Y-%m-%d %H:%M:%S");
        if (in.fail())
            throw ValidationError("base time '" + args.base_text +
                                  "' is not YYYY-MM-DD HH:MM:SS");
        base = timegm(&tm);
    }

    std::string log = synth_log(m, *f, base, args.spacing);
    if (args.out_path.empty()) {
        std::cout << log;
    } else {
        write_text_file(args.out_path, log);
        std::cout << "log written to " << args.out_path << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"failure prediction for optical-network event logs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "netbn 0.1.0");

    std::string matrix_path;
    auto* validate = app.add_subcommand("validate", "check a signature matrix file");
    validate->add_option("--matrix", matrix_path, "matrix CSV file")->required();

    AugmentArgs aug;
    double a_value = 0.0;
    std::uint64_t seed_value = 0;
    auto* augment =
        app.add_subcommand("augment", "estimate a model from a signature matrix");
    augment->add_option("--matrix", aug.matrix_path, "matrix CSV file")->required();
    augment->add_option("-o,--out", aug.out_path, "model output file")->required();
    augment->add_option("--population", aug.population,
                        "synthetic occurrence population");
    augment->add_option("--k", aug.k, "power-law exponent (>= 2)");
    auto* opt_a = augment->add_option(
        "--a", a_value, "explicit power-law scale (default: normalized)");
    auto* opt_norm = augment->add_flag(
        "--normalize", "normalize the power law to total mass 1 (default)");
    opt_a->excludes(opt_norm);
    augment->add_option("--mode", aug.mode, "count mode")
        ->check(CLI::IsMember({"deterministic", "sampled"}));
    auto* opt_seed =
        augment->add_option("--seed", seed_value, "seed for sampled counts");
    auto* opt_window =
        augment->add_option("--window", aug.window, "dependency window size");
    auto* opt_edges = augment->add_option(
        "--edges", aug.edges_path, "explicit edge list file (parent child per line)");
    opt_edges->excludes(opt_window);

    std::string model_path, out_path;
    auto* export_cpt =
        app.add_subcommand("export-cpt", "write the estimated tables as CSV");
    export_cpt->add_option("--model", model_path, "model file")->required();
    export_cpt->add_option("-o,--out", out_path, "output file (default: stdout)");

    std::string evidence_text, query_text;
    bool allow_absence = false, verbose = false;
    auto* query = app.add_subcommand(
        "query", "most probable completion and failure given evidence");
    query->add_option("--model", model_path, "model file")->required();
    query->add_option("--evidence", evidence_text,
                      "observed events, e.g. E1=1 or E1,E2")
        ->required();
    query->add_option("--query", query_text,
                      "query events (default: all non-evidence events)");
    query->add_flag("--allow-absence", allow_absence,
                    "accept =0 evidence statements");
    query->add_flag("--verbose", verbose, "print the full posterior");

    PredictArgs pred;
    auto* predict = app.add_subcommand(
        "predict", "stream a log through a prediction session");
    predict->add_option("--model", pred.model_path, "model file")->required();
    predict->add_option("--log", pred.log_path, "event log file")->required();
    predict->add_option("--rules", pred.rules_path,
                        "extraction rules JSON (default: match event labels)");
    predict->add_flag("--follow", pred.follow, "keep reading as the log grows");
    predict->add_flag("--verbose", pred.verbose,
                      "print per-event posterior marginals");
    predict->add_option("--max-events", pred.max_events,
                        "stop after this many recognized events");

    SynthArgs synth;
    auto* synth_cmd =
        app.add_subcommand("synth", "write a synthetic log for one failure");
    synth_cmd->add_option("--matrix", synth.matrix_path, "matrix CSV file")
        ->required();
    synth_cmd->add_option("--failure", synth.failure_label, "failure label")
        ->required();
    synth_cmd->add_option("--base", synth.base_text,
                          "first timestamp (YYYY-MM-DD HH:MM:SS, UTC)");
    synth_cmd->add_option("--spacing", synth.spacing, "seconds between events");
    synth_cmd->add_option("-o,--out", synth.out_path,
                          "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (validate->parsed()) {
            run_validate(matrix_path);
        } else if (augment->parsed()) {
            if (*opt_a) aug.a = a_value;
            if (*opt_seed) aug.seed = seed_value;
            if (aug.mode == "sampled" && !aug.seed) {
                std::cerr << "error: --mode sampled requires --seed\n";
                return 2;
            }
            run_augment(aug);
        } else if (export_cpt->parsed()) {
            run_export_cpt(model_path, out_path);
        } else if (query->parsed()) {
            run_query(model_path, evidence_text, query_text, allow_absence, verbose);
        } else if (predict->parsed()) {
            run_predict(pred);
        } else if (synth_cmd->parsed()) {
            run_synth(synth);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
