// Runs every primary acceptance criterion and prints one PASS/FAIL line each.
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "botscore/datastore.hpp"
#include "botscore/errors.hpp"
#include "botscore/evaluation.hpp"
#include "botscore/features.hpp"
#include "botscore/forest.hpp"
#include "botscore/graph.hpp"
#include "botscore/ingest.hpp"
#include "botscore/lexicons.hpp"
#include "botscore/service.hpp"
#include "botscore/suite.hpp"
#include "botscore/synth.hpp"

extern char** environ;

namespace fs = std::filesystem;
using namespace botscore;
using json = nlohmann::json;

namespace {

const fs::path kSourceDir = BOTSCORE_SOURCE_DIR;
const fs::path kCli = BOTSCORE_CLI;

struct Outcome {
    bool pass = true;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

fs::path make_temp_dir() {
    std::string pattern = (fs::temp_directory_path() / "botscore-accept-XXXXXX").string();
    if (!::mkdtemp(pattern.data())) throw std::runtime_error("mkdtemp failed");
    return pattern;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Starts the CLI with stdout redirected to `out`; returns the pid.
pid_t spawn_cli(const std::vector<std::string>& args, const fs::path& out) {
    std::vector<std::string> argv_s{kCli.string()};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_s) argv.push_back(a.data());
    argv.push_back(nullptr);
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, out.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    pid_t pid = 0;
    int rc = posix_spawn(&pid, kCli.c_str(), &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) throw std::runtime_error(std::string("posix_spawn: ") + std::strerror(rc));
    return pid;
}

int wait_exit(pid_t pid) {
    int status = 0;
    if (::waitpid(pid, &status, 0) < 0) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
}

json run_cli(const std::vector<std::string>& args, const fs::path& out, int& code) {
    code = wait_exit(spawn_cli(args, out));
    try {
        return json::parse(slurp(out));
    } catch (const json::exception&) {
        return json();
    }
}

const Lexicons& lexicons() {
    static const Lexicons lex = load_lexicons(default_lexicon_dir());
    return lex;
}

AccountSnapshot fixture(const std::string& name) {
    return parse_snapshot(slurp(kSourceDir / "fixtures" / name));
}

std::shared_ptr<const ScoreSuiteModel> shared_model() {
    static auto model = [] {
        SynthParams sp;
        sp.seed = 42;
        sp.bots = 100;
        sp.humans = 100;
        auto corpus = generate_corpus(sp);
        std::vector<FeatureVector> x;
        for (const auto& a : corpus.accounts) x.push_back(extract_all(a, default_registry(), lexicons()));
        ForestParams p;
        p.n_trees = 50;
        p.rng_seed = 42;
        return std::make_shared<const ScoreSuiteModel>(
            train_suite(x, corpus.labels, p, default_registry(), {corpus.digest, 0, 0}));
    }();
    return model;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// ---------------------------------------------------------------------------

Outcome benchmark() {
    Outcome o;
    auto dir = make_temp_dir();
    auto start = std::chrono::steady_clock::now();
    int code = 0;
    run_cli({"synth", "--seed", "42", "--bots", "500", "--humans", "500", "--out", (dir / "corpus").string()},
            dir / "synth.json", code);
    o.expect(code == 0, "synth exited " + std::to_string(code));
    auto cv = run_cli({"crossval", "--corpus", (dir / "corpus").string(), "--k", "10", "--seed", "42"},
                      dir / "cv.json", code);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.expect(code == 0 && cv.is_object(), "crossval exited " + std::to_string(code));
    if (!o.pass) return o;
    double mean = cv["mean_auc"].get<double>();
    double worst_class = 1.0;
    std::string worst_name;
    for (const auto& [name, v] : cv["class_mean_auc"].items())
        if (v.get<double>() < worst_class) worst_class = v.get<double>(), worst_name = name;
    o.expect(cv["fold_auc"].size() == 10, "expected 10 folds");
    o.expect(mean >= 0.95, "mean AUC below 0.95");
    o.expect(worst_class > 0.5, "class " + worst_name + " AUC not above 0.5");
    o.expect(secs < 300.0, "runtime over 5 minutes");
    std::ostringstream d;
    d << "mean AUC " << mean << ", min class AUC " << worst_class << " (" << worst_name << "), " << secs << " s";
    if (o.pass) o.detail = d.str();
    else o.detail += "; " + d.str();
    fs::remove_all(dir);
    return o;
}

Outcome seven_scores() {
    Outcome o;
    auto model = shared_model();
    std::vector<AccountSnapshot> snaps{fixture("acct_mixed.json"), fixture("alice.json")};
    auto empty = fixture("alice.json");
    empty.tweets.clear();
    empty.mentions.clear();
    empty.contacts.clear();
    snaps.push_back(empty);

    SynthParams sp;
    sp.seed = 4242;
    sp.bots = 150;
    sp.humans = 150;
    sp.crossover = 0.5;
    CounterRng rng(4242, 1);
    for (auto a : generate_corpus(sp).accounts) {
        // Random truncation keeps snapshots valid while covering sparse activity.
        a.tweets.resize(rng.uniform(a.tweets.size() + 1));
        a.mentions.resize(rng.uniform(a.mentions.size() + 1));
        if (rng.uniform(4) == 0) a.contacts.clear();
        if (rng.uniform(4) == 0) a.user.description.clear();
        snaps.push_back(std::move(a));
    }
    std::size_t checked = 0;
    for (const auto& s : snaps) {
        auto scores = score_suite(*model, extract_all(s, default_registry(), lexicons()));
        o.expect(scores.values.size() == 7, "score count != 7");
        for (double v : scores.values) o.expect(v >= 0.0 && v <= 1.0, "score outside [0,1]");
        ++checked;
    }
    if (o.pass) o.detail = std::to_string(checked) + " snapshots incl. empty activity, 7 scores each in [0,1]";
    return o;
}

Outcome auc_oracle() {
    Outcome o;
    CounterRng rng(500, 7);
    double worst = 0.0;
    for (int round = 0; round < 500; ++round) {
        std::size_t n = 2 + rng.uniform(199);
        int levels = 1 + static_cast<int>(rng.uniform(50));
        std::vector<double> s;
        std::vector<int> y;
        for (std::size_t i = 0; i < n; ++i) {
            s.push_back(static_cast<double>(rng.uniform(levels)) / levels);
            y.push_back(static_cast<int>(rng.uniform(2)));
        }
        y[0] = 0;
        y[1] = 1;
        double wins = 0, pairs = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (y[i] == 1 && y[j] == 0) {
                    pairs += 1;
                    wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
                }
        double brute = wins / pairs;
        double auc = roc_auc(s, y);
        double trap = trapezoid_area(roc_curve(s, y));
        worst = std::max({worst, std::abs(auc - brute), std::abs(trap - auc)});
    }
    o.expect(worst <= 1e-12, "max deviation " + std::to_string(worst));
    if (o.pass) {
        std::ostringstream d;
        d << "500 instances, max |deviation| " << worst;
        o.detail = d.str();
    }
    return o;
}

Outcome graph_oracle() {
    Outcome o;
    CounterRng rng(2024, 9);
    for (int round = 0; round < 200; ++round) {
        std::size_t n = 1 + rng.uniform(30);
        double p = rng.unit();
        bool directed = round % 2 == 0;
        InteractionGraph g(directed ? GraphKind::mention : GraphKind::hashtag_cooccurrence);
        std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
        auto name = [](std::size_t i) { return "v" + std::to_string(i); };
        for (std::size_t i = 0; i < n; ++i) g.add_node(name(i));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || (!directed && j < i) || rng.unit() >= p * 0.5) continue;
                g.add_edge(name(i), name(j), 1 + static_cast<long>(rng.uniform(3)));
                adj[i][j] = adj[j][i] = 1;
            }
        long triangles = 0, triples = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                for (std::size_t c = b + 1; c < n; ++c)
                    if (adj[a][b] && adj[b][c] && adj[a][c]) ++triangles;
        auto deg = g.degrees();
        double deg_sum = 0, deg_max = 0;
        for (std::size_t v = 0; v < n; ++v) {
            long k = 0;
            for (std::size_t u = 0; u < n; ++u) k += adj[v][u];
            triples += k * (k - 1) / 2;
            o.expect(deg.at(name(v)) == static_cast<double>(k), "degree mismatch");
            deg_sum += static_cast<double>(k);
            deg_max = std::max(deg_max, static_cast<double>(k));
        }
        std::vector<double> dv;
        for (const auto& [_, d] : deg) dv.push_back(d);
        auto st = describe(dv);
        o.expect(st.mean == deg_sum / static_cast<double>(n), "degree mean mismatch");
        o.expect(st.max == deg_max, "degree max mismatch");
        double expected = triples == 0 ? 0.0 : 3.0 * static_cast<double>(triangles) / static_cast<double>(triples);
        o.expect(global_clustering(g) == expected, "clustering mismatch");
    }
    InteractionGraph k4(GraphKind::hashtag_cooccurrence);
    for (auto [a, b] : std::vector<std::pair<const char*, const char*>>{{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}})
        k4.add_edge(a, b);
    o.expect(global_clustering(k4) == 0.75, "K4 minus an edge != 0.75");
    if (o.pass) o.detail = "200 random graphs exact; K4-minus-edge = 0.75";
    return o;
}

Outcome forest_properties() {
    Outcome o;
    o.expect(gini_impurity(5, 5) == 0.5, "gini(5,5) != 0.5");
    o.expect(gini_impurity(10, 0) == 0.0, "gini(10,0) != 0");

    ForestParams p;
    p.n_trees = 1;
    p.bootstrap = false;
    p.max_features = 1 << 20;
    CounterRng rng(77, 3);
    int datasets = 0;
    for (int round = 0; round < 60; ++round) {
        std::size_t n = 4 + rng.uniform(120), d = 1 + rng.uniform(8);
        std::map<std::vector<double>, int> seen;
        std::vector<FeatureVector> x;
        std::vector<int> y;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> r;
            for (std::size_t j = 0; j < d; ++j) r.push_back(static_cast<double>(rng.uniform(5)));
            auto it = seen.emplace(r, static_cast<int>(rng.uniform(2))).first;
            x.push_back({"toy", r});
            y.push_back(it->second);
        }
        if (std::count(y.begin(), y.end(), 1) == 0 || std::count(y.begin(), y.end(), 0) == 0) continue;
        p.rng_seed = static_cast<std::uint64_t>(round);
        auto m = train_forest(x, y, p);
        for (std::size_t i = 0; i < x.size(); ++i)
            o.expect((predict_score(m, x[i]) >= 0.5 ? 1 : 0) == y[i], "tree failed to memorize");
        ++datasets;
    }

    SynthParams sp;
    sp.seed = 42;
    sp.bots = 60;
    sp.humans = 60;
    auto corpus = generate_corpus(sp);
    std::vector<FeatureVector> x;
    for (const auto& a : corpus.accounts) x.push_back(extract_all(a, default_registry(), lexicons()));
    ForestParams fp;
    fp.n_trees = 30;
    fp.rng_seed = 42;
    auto a = serialize_suite(train_suite(x, corpus.labels, fp, default_registry(), {corpus.digest, 1, 0}));
    auto b = serialize_suite(train_suite(x, corpus.labels, fp, default_registry(), {corpus.digest, 1, 0}));
    o.expect(a == b, "repeated training is not bit-identical");
    if (o.pass)
        o.detail = "gini ok; " + std::to_string(datasets) + " datasets memorized; " + std::to_string(a.size()) +
                   "-byte models identical";
    return o;
}

struct ServiceHarness {
    fs::path dir = make_temp_dir();
    Timestamp now = parse_iso8601("2016-01-01T00:00:00Z");
    std::shared_ptr<ScoreStore> store = std::make_shared<ScoreStore>(dir / "scores.log");
    ScoringService service{shared_model(), lexicons(), std::make_shared<FixtureSource>(kSourceDir / "fixtures"), store,
                           RateLimitConfig{}, [this] { return now; }};
    ~ServiceHarness() { fs::remove_all(dir); }
};

ServiceRequest request_from(std::string address, std::string api_key = "") {
    ServiceRequest r;
    r.client_address = std::move(address);
    if (!api_key.empty()) r.headers["x-api-key"] = std::move(api_key);
    return r;
}

Outcome rate_limiter() {
    Outcome o;
    ServiceHarness h;
    std::atomic<int> ok{0}, limited{0}, other{0};
    {
        std::vector<std::jthread> workers;
        for (int t = 0; t < 8; ++t)
            workers.emplace_back([&] {
                for (int i = 0; i < 125; ++i) {
                    auto r = h.service.score_by_name("alice", request_from("192.0.2.1"));
                    (r.status == 200 ? ok : r.status == 429 ? limited : other)++;
                }
            });
    }
    o.expect(ok == 180 && limited == 820 && other == 0,
             "admitted " + std::to_string(ok.load()) + ", limited " + std::to_string(limited.load()));

    // Window anchored at `now`; a denial 37 s later must wait the remainder.
    h.now += 37;
    auto denied = h.service.score_by_name("alice", request_from("192.0.2.1"));
    o.expect(denied.status == 429 && denied.header("Retry-After") == std::to_string(900 - 37),
             "Retry-After " + denied.header("Retry-After"));
    auto fresh = h.service.score_by_name("alice", request_from("192.0.2.2"));
    o.expect(fresh.status == 200 && fresh.header("X-RateLimit-Remaining") == "179", "distinct key was affected");
    auto keyed = h.service.score_by_name("alice", request_from("192.0.2.1", "k-1"));
    o.expect(keyed.status == 200, "API key shared the address quota");
    h.now += 900 - 37;
    o.expect(h.service.score_by_name("alice", request_from("192.0.2.1")).status == 200, "window did not reset");
    if (o.pass) o.detail = "1000 concurrent attempts: 180 admitted, 820 refused; Retry-After 863; keys independent";
    return o;
}

Outcome privacy() {
    Outcome o;
    ServiceHarness h;
    CounterRng rng(99, 99);
    SynthParams sp;
    sp.seed = 99;
    sp.bots = 20;
    sp.humans = 20;
    auto pool = generate_corpus(sp).accounts;
    std::vector<std::string> names{"alice", "ALICE", "Alice", "nobody_here", "bad name", "../etc/passwd"};
    std::set<std::string> scored, identifiers;
    for (int i = 0; i < 300; ++i) {
        std::string addr = "198.51.100." + std::to_string(rng.uniform(256));
        std::string key = rng.uniform(2) ? "apikey-" + std::to_string(100000 + rng.uniform(900000)) : "";
        identifiers.insert(addr);
        if (!key.empty()) identifiers.insert(key);
        auto req = request_from(addr, key);
        h.now += static_cast<Timestamp>(rng.uniform(30));
        ServiceResponse r;
        switch (rng.uniform(4)) {
        case 0: r = h.service.score_by_name(names[rng.uniform(names.size())], req); break;
        case 1:
            req.body = rng.uniform(5) ? serialize_snapshot(pool[rng.uniform(pool.size())]) : std::string("{broken");
            r = h.service.score_snapshot(req);
            break;
        case 2:
            req.query["bins"] = std::to_string(rng.uniform(30));
            r = h.service.cdf(req);
            break;
        default: r = h.service.health(); break;
        }
        if (r.status == 200 && r.body.find("\"screen_name\"") != std::string::npos)
            scored.insert(normalize_account_key(json::parse(r.body)["screen_name"].get<std::string>()));
    }
    std::set<std::string> stored;
    for (const auto& e : h.store->entries()) {
        stored.insert(e.account_key);
        o.expect(e.model_version == shared_model()->version_digest(), "unexpected model digest in store");
        o.expect(e.timestamp > 0, "missing timestamp");
    }
    o.expect(stored == scored, "stored keys differ from scored accounts");
    auto raw = slurp(h.dir / "scores.log");
    for (const auto& id : identifiers) o.expect(raw.find(id) == std::string::npos, "requester identifier persisted");
    if (o.pass)
        o.detail = "300 mixed requests; " + std::to_string(stored.size()) + " scored accounts stored; " +
                   std::to_string(identifiers.size()) + " requester identifiers absent";
    return o;
}

Outcome cdf() {
    Outcome o;
    auto dir = make_temp_dir();
    {
        ScoreStore store(dir / "example.log");
        std::vector<double> v{0.2, 0.4, 0.4, 0.9};
        for (std::size_t i = 0; i < v.size(); ++i) {
            ScoreStoreEntry e{"acct" + std::to_string(i), {}, "m", 1};
            e.scores.values.fill(v[i]);
            store.record(e);
        }
        o.expect(store.cumulative_fraction(0.4) == 0.75, "fraction at 0.4 != 0.75");
    }
    for (int seed = 0; seed < 20; ++seed) {
        CounterRng rng(static_cast<std::uint64_t>(seed), 5);
        ScoreStore store(dir / ("bulk" + std::to_string(seed) + ".log"));
        std::size_t n = 1 + rng.uniform(2000);
        for (std::size_t i = 0; i < n; ++i) {
            ScoreStoreEntry e{"u" + std::to_string(rng.uniform(n)), {}, "m", static_cast<Timestamp>(i)};
            e.scores.values.fill(rng.unit() * rng.unit());
            store.record(e);
        }
        int bins = 1 + static_cast<int>(rng.uniform(100));
        auto points = store.score_cdf(bins);
        o.expect(points.size() == static_cast<std::size_t>(bins) + 1, "wrong point count");
        for (std::size_t i = 1; i < points.size(); ++i)
            o.expect(points[i].fraction >= points[i - 1].fraction, "CDF not monotone");
        o.expect(points.back().fraction == 1.0, "CDF does not end at 1");
    }
    fs::remove_all(dir);
    if (o.pass) o.detail = "F(0.4) = 0.75; 20 seeded bulk loads monotone ending at 1.0";
    return o;
}

Outcome registry_floor() {
    Outcome o;
    const auto& reg = default_registry();
    std::set<std::string> names;
    std::map<FeatureClass, int> per_class;
    for (const auto& s : reg.specs()) {
        names.insert(s.name);
        per_class[s.feature_class]++;
    }
    o.expect(reg.size() >= 200, "fewer than 200 features");
    o.expect(names.size() == reg.size(), "duplicate feature names");
    int min_class = 1 << 30;
    for (auto c : kAllFeatureClasses) min_class = std::min(min_class, per_class[c]);
    o.expect(min_class >= 10, "a class has fewer than 10 features");

    auto golden = json::parse(slurp(kSourceDir / "tests" / "golden" / "acct_mixed_vector.json"));
    o.expect(golden["registry_digest"] == reg.digest(), "golden registry digest differs");
    auto v = extract_all(fixture("acct_mixed.json"), reg, lexicons());
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < reg.size() && i < golden["features"].size(); ++i) {
        const auto& g = golden["features"][i];
        double want = g["value"].is_null() ? kMissing : g["value"].get<double>();
        bool same = g["name"] == reg.at(i).name &&
                    (std::isnan(want) ? std::isnan(v.values[i]) : same_bits(want, v.values[i]));
        if (!same) ++mismatches;
    }
    o.expect(golden["features"].size() == reg.size() && mismatches == 0,
             std::to_string(mismatches) + " golden mismatches");
    if (o.pass)
        o.detail = std::to_string(reg.size()) + " unique features, min " + std::to_string(min_class) +
                   " per class; golden vector identical";
    return o;
}

Outcome end_to_end() {
    Outcome o;
    auto dir = make_temp_dir();
    int code = 0;
    run_cli({"synth", "--seed", "42", "--bots", "100", "--humans", "100", "--out", (dir / "corpus").string()},
            dir / "synth.json", code);
    o.expect(code == 0, "synth failed");
    auto trained = run_cli({"train", "--corpus", (dir / "corpus").string(), "--model", (dir / "model.bin").string(),
                            "--trees", "50"},
                           dir / "train.json", code);
    o.expect(code == 0, "train failed");
    if (!o.pass) return o;

    pid_t server = spawn_cli({"serve", "--model", (dir / "model.bin").string(), "--store",
                              (dir / "scores.log").string(), "--fixtures", (kSourceDir / "fixtures").string(), "--host",
                              "127.0.0.1", "--port", "0"},
                             dir / "serve.json");
    json banner;
    for (int i = 0; i < 300 && banner.is_null(); ++i) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
        auto text = slurp(dir / "serve.json");
        if (text.find('\n') != std::string::npos) banner = json::parse(text.substr(0, text.find('\n')), nullptr, false);
    }
    o.expect(banner.is_object() && banner.contains("port"), "server did not report a port");
    if (o.pass) {
        httplib::Client client("127.0.0.1", banner["port"].get<int>());
        client.set_read_timeout(30, 0);
        auto res = client.Get("/api/v1/score/alice");
        o.expect(res && res->status == 200, "GET /api/v1/score/alice did not return 200");
        if (o.pass) {
            try {
                auto report = report_from_json(json::parse(res->body));
                o.expect(report.screen_name == "alice", "wrong screen name");
                for (double v : report.scores.values) o.expect(v >= 0.0 && v <= 1.0, "score outside [0,1]");
                o.expect(report.model_version == trained["model_version"], "model version mismatch");
            } catch (const std::exception& e) {
                o.expect(false, std::string("malformed ScoreReport: ") + e.what());
            }
        }
    }
    ::kill(server, SIGTERM);
    int exit_code = wait_exit(server);
    o.expect(exit_code == 0, "server exited " + std::to_string(exit_code));
    fs::remove_all(dir);
    if (o.pass) o.detail = "synth -> train -> serve -> GET alice = 200 with valid ScoreReport (C++ targets only)";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria{
        {"benchmark: 10-fold crossval AUC >= 0.95, classes > 0.5, < 5 min", benchmark},
        {"seven-score contract", seven_scores},
        {"AUC oracle equivalence", auc_oracle},
        {"graph-statistic oracle", graph_oracle},
        {"CART/forest properties", forest_properties},
        {"rate limiter 180 per 15 min", rate_limiter},
        {"privacy of stored records", privacy},
        {"CDF correctness", cdf},
        {"feature registry floor and golden vector", registry_floor},
        {"end-to-end CLI and HTTP", end_to_end},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << " | " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
