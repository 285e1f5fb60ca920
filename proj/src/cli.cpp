#include "botscore/cli.hpp"

#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "botscore/errors.hpp"
#include "botscore/evaluation.hpp"
#include "botscore/features.hpp"
#include "botscore/http_server.hpp"
#include "botscore/ingest.hpp"
#include "botscore/service.hpp"
#include "botscore/suite.hpp"
#include "botscore/synth.hpp"

namespace botscore::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string format = "json";
    std::string config;
    std::string lexicons;

    std::uint64_t seed = 42;
    int bots = 500;
    int humans = 500;
    double crossover = -1.0;
    std::string out_dir;

    std::string corpus;
    std::string model;  // empty = config / model.bin
    int trees = 100;
    int max_features = 0;
    int min_leaf = 1;
    int max_depth = 0;
    int k = 10;
    std::string roc_csv;

    std::string snapshot;
    std::string name;
    std::string fixtures;
    bool detail = false;

    std::string store;
    int bins = 10;

    std::string host;
    int port = -1;
    int rate_limit = 0;
    int rate_window = 0;
    std::string cors_origin;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFile("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content)) throw StorageError("cannot write " + path);
}

void flatten(const json& v, const std::string& prefix, std::ostream& out) {
    if (v.is_object()) {
        for (const auto& [k, child] : v.items()) flatten(child, prefix.empty() ? k : prefix + "." + k, out);
    } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
    } else if (v.is_string()) {
        out << prefix << ": " << v.get<std::string>() << '\n';
    } else {
        out << prefix << ": " << v.dump() << '\n';
    }
}

void emit(const Options& o, const json& doc, std::ostream& out) {
    if (o.format == "text")
        flatten(doc, "", out);
    else
        out << doc.dump(2) << '\n';
}

ForestParams forest_params(const Options& o) {
    ForestParams p;
    p.n_trees = o.trees;
    p.max_features = o.max_features;
    p.min_samples_leaf = o.min_leaf;
    p.max_depth = o.max_depth;
    p.rng_seed = o.seed;
    if (p.n_trees < 1) throw CLI::ValidationError("--trees", "must be >= 1");
    if (p.min_samples_leaf < 1) throw CLI::ValidationError("--min-leaf", "must be >= 1");
    if (p.max_features < 0 || p.max_depth < 0) throw CLI::ValidationError("forest", "limits must be >= 0");
    return p;
}

Lexicons lexicons_for(const Options& o) {
    return load_lexicons(o.lexicons.empty() ? default_lexicon_dir() : std::filesystem::path(o.lexicons));
}

std::vector<FeatureVector> featurize(const LabeledCorpus& corpus, const Lexicons& lex) {
    std::vector<FeatureVector> x;
    x.reserve(corpus.size());
    for (const auto& acct : corpus.accounts) x.push_back(extract_all(acct, default_registry(), lex));
    return x;
}

ServiceConfig service_config(const Options& o) {
    ServiceConfig c = o.config.empty() ? ServiceConfig{} : load_service_config(o.config);
    apply_env_overrides(c);
    if (!o.host.empty()) c.host = o.host;
    if (o.port >= 0) c.port = o.port;
    if (!o.model.empty()) c.model_path = o.model;
    if (!o.store.empty()) c.store_path = o.store;
    if (!o.fixtures.empty()) {
        c.source.kind = BackendKind::fixture_dir;
        c.source.root = o.fixtures;
    }
    if (o.rate_limit > 0) c.rate_limit.limit = o.rate_limit;
    if (o.rate_window > 0) c.rate_limit.window_seconds = o.rate_window;
    if (!o.cors_origin.empty()) c.cors_origin = o.cors_origin;
    if (!o.lexicons.empty()) c.lexicon_dir = o.lexicons;
    return c;
}

int cmd_synth(const Options& o, std::ostream& out) {
    SynthParams p;
    p.seed = o.seed;
    p.bots = o.bots;
    p.humans = o.humans;
    if (o.crossover >= 0) p.crossover = o.crossover;
    validate(p);
    auto corpus = generate_corpus(p);
    std::string digest = write_corpus(corpus, o.out_dir);
    emit(o, {{"command", "synth"}, {"seed", o.seed}, {"out", o.out_dir}, {"dataset_digest", digest},
             {"bots", p.bots}, {"humans", p.humans}, {"params", synth_params_to_json(p)}}, out);
    return kExitOk;
}

int cmd_train(const Options& o, std::ostream& out) {
    auto params = forest_params(o);
    auto corpus = load_corpus(o.corpus);
    auto lex = lexicons_for(o);
    auto x = featurize(corpus, lex);
    SuiteMetadata meta{corpus.digest, now_utc(), corpus.size()};
    auto suite = train_suite(x, corpus.labels, params, default_registry(), meta);
    save_suite(suite, o.model);
    emit(o, {{"command", "train"}, {"seed", o.seed}, {"model", o.model}, {"dataset_digest", corpus.digest},
             {"model_version", suite.version_digest()}, {"registry_digest", suite.registry_digest},
             {"samples", corpus.size()}, {"params", params_to_json(params)},
             {"oob_accuracy", suite.overall.oob_accuracy}}, out);
    return kExitOk;
}

int cmd_crossval(const Options& o, std::ostream& out) {
    auto params = forest_params(o);
    auto started = std::chrono::steady_clock::now();
    auto corpus = load_corpus(o.corpus);
    auto lex = lexicons_for(o);
    auto x = featurize(corpus, lex);
    auto report = cross_validate(x, corpus.labels, default_registry(), params, o.k, o.seed, corpus.digest);
    if (!o.roc_csv.empty())
        write_file(o.roc_csv, roc_curve_csv(roc_curve(report.out_of_fold_scores, report.labels)));
    json doc = cv_report_to_json(report);
    doc["command"] = "crossval";
    doc["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    emit(o, doc, out);
    return kExitOk;
}

int cmd_score(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.snapshot.empty() == o.name.empty())
        throw CLI::ValidationError("score", "give exactly one of --snapshot or --name");
    auto model = std::make_shared<const ScoreSuiteModel>(load_suite(o.model));
    AccountSnapshot snap;
    std::vector<std::string> warnings;
    if (!o.snapshot.empty()) {
        snap = parse_snapshot(read_file(o.snapshot), &warnings);
    } else {
        auto cfg = service_config(o);
        snap = make_source(cfg.source)->fetch_account(o.name, &warnings);
    }
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    Lexicons lex = lexicons_for(o);
    ScoreReport r;
    r.screen_name = snap.user.screen_name;
    r.scores = score_suite(*model, extract_all(snap, default_registry(), lex));
    r.tweets_used = static_cast<int>(snap.tweets.size());
    r.mentions_used = static_cast<int>(snap.mentions.size());
    r.model_version = model->version_digest();
    r.timestamp = now_utc();
    if (o.detail) r.detail = detail_plots(snap);
    json doc = report_to_json(r);
    doc["seed"] = model->overall.params.rng_seed;
    emit(o, doc, out);
    return kExitOk;
}

int cmd_features(const Options& o, std::ostream& out) {
    auto snap = parse_snapshot(read_file(o.snapshot));
    const auto& reg = default_registry();
    auto fv = extract_all(snap, reg, lexicons_for(o));
    if (o.format == "text") {
        for (std::size_t i = 0; i < reg.size(); ++i) {
            std::ostringstream v;
            v.precision(17);
            if (is_missing(fv.values[i]))
                v << "NA";
            else
                v << fv.values[i];
            out << reg.at(i).name << '\t' << v.str() << '\n';
        }
        return kExitOk;
    }
    json features = json::array();
    for (std::size_t i = 0; i < reg.size(); ++i)
        features.push_back({{"name", reg.at(i).name},
                            {"class", feature_class_name(reg.at(i).feature_class)},
                            {"value", is_missing(fv.values[i]) ? json(nullptr) : json(fv.values[i])}});
    out << json({{"command", "features"}, {"registry_digest", reg.digest()}, {"features", features}}).dump(2) << '\n';
    return kExitOk;
}

int cmd_manifest(const Options& o, std::ostream& out) {
    if (o.format == "text")
        out << default_registry().manifest_text();
    else
        out << default_registry().manifest_json().dump(2) << '\n';
    return kExitOk;
}

int cmd_stats_cdf(const Options& o, std::ostream& out) {
    if (o.bins < 1) throw CLI::ValidationError("--bins", "must be >= 1");
    if (!std::filesystem::exists(o.store)) throw MissingFile("no store at " + o.store);
    ScoreStore store(o.store);
    json points = json::array();
    for (const auto& p : store.score_cdf(o.bins)) points.push_back({{"threshold", p.threshold}, {"fraction", p.fraction}});
    emit(o, {{"command", "stats cdf"}, {"store", o.store}, {"bins", o.bins},
             {"unique_accounts", store.unique_accounts()}, {"records", store.record_count()}, {"points", points}}, out);
    return kExitOk;
}

int cmd_stats_compact(const Options& o, std::ostream& out) {
    if (!std::filesystem::exists(o.store)) throw MissingFile("no store at " + o.store);
    ScoreStore store(o.store);
    std::size_t before = store.record_count();
    store.compact();
    emit(o, {{"command", "stats compact"}, {"store", o.store}, {"records_before", before},
             {"records_after", store.record_count()}}, out);
    return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out) {
    ServiceConfig cfg = service_config(o);
    auto model = std::make_shared<const ScoreSuiteModel>(load_suite(cfg.model_path));
    Lexicons lex = load_lexicons(cfg.lexicon_dir.empty() ? default_lexicon_dir() : cfg.lexicon_dir);
    std::shared_ptr<const AccountSource> source = make_source(cfg.source);
    auto store = std::make_shared<ScoreStore>(cfg.store_path);
    ScoringService service(model, std::move(lex), source, store, cfg.rate_limit);

    // Signals are handled by a dedicated thread so the server stops cleanly.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    HttpServer server(service, cfg.cors_origin, cfg.threads);
    int port = server.bind(cfg.host, cfg.port);
    out << json({{"command", "serve"}, {"host", cfg.host}, {"port", port},
                 {"model_version", model->version_digest()}, {"seed", model->overall.params.rng_seed}}).dump()
        << std::endl;

    std::thread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    });
    server.serve();
    // serve() returned without a signal (bind lost); wake the waiter.
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    return kExitOk;
}

int classify_error(const std::exception& e) {
    if (dynamic_cast<const MissingFile*>(&e) || dynamic_cast<const ParseError*>(&e) ||
        dynamic_cast<const SchemaError*>(&e) || dynamic_cast<const NotFound*>(&e) ||
        dynamic_cast<const ModelFormatError*>(&e) || dynamic_cast<const EmptyStore*>(&e) ||
        dynamic_cast<const TooFewSamples*>(&e) || dynamic_cast<const SingleClassError*>(&e) ||
        dynamic_cast<const RegistryMismatch*>(&e) || dynamic_cast<const StorageError*>(&e) ||
        dynamic_cast<const LexiconError*>(&e) || dynamic_cast<const UpstreamError*>(&e) ||
        dynamic_cast<const InsufficientData*>(&e))
        return kExitData;
    return kExitInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Social bot scoring: corpus generation, training, evaluation and serving", "botscore"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--config", o.config, "Service config file (JSON)");
    app.add_option("--lexicons", o.lexicons, "Lexicon directory");

    auto forest_opts = [&](CLI::App* sub) {
        sub->add_option("--trees", o.trees, "Trees per forest");
        sub->add_option("--max-features", o.max_features, "Features tried per split (0 = sqrt)");
        sub->add_option("--min-leaf", o.min_leaf, "Minimum samples per leaf");
        sub->add_option("--max-depth", o.max_depth, "Depth limit (0 = none)");
    };

    auto* synth = app.add_subcommand("synth", "Generate a labeled synthetic corpus");
    synth->add_option("--seed", o.seed, "Generator seed");
    synth->add_option("--bots", o.bots, "Bot accounts")->check(CLI::PositiveNumber);
    synth->add_option("--humans", o.humans, "Human accounts")->check(CLI::PositiveNumber);
    synth->add_option("--crossover", o.crossover, "Per-dimension class crossover probability");
    synth->add_option("--out", o.out_dir, "Output directory")->required();

    auto* train = app.add_subcommand("train", "Train the seven-model suite");
    train->add_option("--corpus", o.corpus, "Corpus directory")->required();
    train->add_option("--model", o.model, "Model output path");
    train->add_option("--seed", o.seed, "Forest seed");
    forest_opts(train);

    auto* crossval = app.add_subcommand("crossval", "Stratified k-fold cross-validation");
    crossval->add_option("--corpus", o.corpus, "Corpus directory")->required();
    crossval->add_option("--k", o.k, "Folds");
    crossval->add_option("--seed", o.seed, "Fold and forest seed");
    crossval->add_option("--roc-csv", o.roc_csv, "Write the out-of-fold ROC curve here");
    forest_opts(crossval);

    auto* score = app.add_subcommand("score", "Score one account");
    score->add_option("--model", o.model, "Model path");
    score->add_option("--snapshot", o.snapshot, "Snapshot document");
    score->add_option("--name", o.name, "Screen name fetched through the configured source");
    score->add_option("--fixtures", o.fixtures, "Fixture directory for --name");
    score->add_flag("--detail", o.detail, "Include plot data");

    auto* features = app.add_subcommand("features", "Dump the named feature vector of a snapshot");
    features->add_option("--snapshot", o.snapshot, "Snapshot document")->required();

    app.add_subcommand("manifest", "Print the feature registry");

    auto* serve = app.add_subcommand("serve", "Run the HTTP scoring service");
    serve->add_option("--model", o.model, "Model path");
    serve->add_option("--store", o.store, "Score store path");
    serve->add_option("--fixtures", o.fixtures, "Fixture directory source");
    serve->add_option("--host", o.host, "Listen address");
    serve->add_option("--port", o.port, "Listen port (0 = ephemeral)");
    serve->add_option("--rate-limit", o.rate_limit, "Requests per window");
    serve->add_option("--rate-window", o.rate_window, "Window seconds");
    serve->add_option("--cors-origin", o.cors_origin, "Allowed CORS origin");

    auto* stats = app.add_subcommand("stats", "Score store reports");
    stats->require_subcommand(1);
    stats->fallthrough();
    auto* cdf = stats->add_subcommand("cdf", "Cumulative distribution of stored overall scores");
    cdf->add_option("--store", o.store, "Score store path")->required();
    cdf->add_option("--bins", o.bins, "Thresholds i/bins");
    auto* compact = stats->add_subcommand("compact", "Keep only the latest entry per account");
    compact->add_option("--store", o.store, "Score store path")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*synth) return cmd_synth(o, out);
        if (*serve) return cmd_serve(o, out);
        if (o.model.empty()) o.model = "model.bin";
        if (*train) return cmd_train(o, out);
        if (*crossval) return cmd_crossval(o, out);
        if (*score) return cmd_score(o, out, err);
        if (*features) return cmd_features(o, out);
        if (*cdf) return cmd_stats_cdf(o, out);
        if (*compact) return cmd_stats_compact(o, out);
        return cmd_manifest(o, out);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return classify_error(e);
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace botscore::cli
