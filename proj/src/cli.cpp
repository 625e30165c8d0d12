#include "diarasr/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "diarasr/der.hpp"
#include "diarasr/json_io.hpp"
#include "diarasr/rng.hpp"
#include "diarasr/rttm.hpp"
#include "diarasr/seglst.hpp"
#include "diarasr/simkit.hpp"
#include "diarasr/uem.hpp"
#include "diarasr/wer.hpp"

namespace diarasr {

namespace {

// Thrown for everything that maps to exit code 1.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool ends_with(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

SegmentList load_segments(const std::string &path) {
    std::string text = read_file(path);
    try {
        return ends_with(path, ".rttm") ? parse_rttm(text)
                                        : parse_seglst(text);
    } catch (const ParseError &e) {
        throw DataError(path + ": " + e.what());
    }
}

// Sessions are scored concurrently; results land by index so the report
// order stays fixed by session id.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn) {
    const std::size_t hw =
        std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (!failed.load()) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) {
                    break;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                    }
                    failed.store(true);
                    break;
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

void emit(const json &report, const std::string &out_path, std::ostream &out) {
    std::string text = report.dump(2);
    text += '\n';
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        throw DataError("cannot write '" + out_path + "'");
    }
    file << text;
}

std::size_t count_speakers(const SegmentList &segs) {
    std::set<std::string> names;
    for (const auto &seg : segs) {
        names.insert(seg.speaker);
    }
    return names.size();
}

json counts_json(const ErrorCounts &c, const std::optional<double> &rate) {
    json j;
    j["ref_tokens"] = c.ref_tokens;
    j["substitutions"] = c.substitutions;
    j["deletions"] = c.deletions;
    j["insertions"] = c.insertions;
    j["errors"] = c.total_errors();
    j["rate"] = rate ? json(*rate) : json(nullptr);
    return j;
}

json der_json(const DerReport &r) {
    json j;
    j["missed"] = r.missed;
    j["false_alarm"] = r.false_alarm;
    j["confusion"] = r.confusion;
    j["total_ref_speech"] = r.total_ref_speech;
    j["der"] = r.der ? json(*r.der) : json(nullptr);
    return j;
}

std::vector<std::string> session_union(
    const std::map<std::string, SegmentList> &ref,
    const std::map<std::string, SegmentList> &hyp) {
    std::set<std::string> ids;
    for (const auto &[sid, segs] : ref) {
        ids.insert(sid);
    }
    for (const auto &[sid, segs] : hyp) {
        ids.insert(sid);
    }
    return {ids.begin(), ids.end()};
}

struct ScoreWerOptions {
    std::string ref_path;
    std::string hyp_path;
    std::string tokenizer = "word";
    double collar = 5.0;
    bool by_num_speakers = false;
    std::string out_path;
};

int run_score_wer(const std::string &metric, const ScoreWerOptions &opt,
                  std::ostream &out) {
    Tokenizer tok{opt.tokenizer == "char" ? TokenMode::Char : TokenMode::Word};
    auto ref_sessions = group_by_session(load_segments(opt.ref_path));
    auto hyp_sessions = group_by_session(load_segments(opt.hyp_path));
    auto ids = session_union(ref_sessions, hyp_sessions);

    const bool timed = metric == "tcpwer";
    const SegmentList empty;
    std::vector<AlignmentReport> reports(ids.size());
    std::vector<std::size_t> ref_speaker_counts(ids.size());
    parallel_for(ids.size(), [&](std::size_t i) {
        auto r = ref_sessions.find(ids[i]);
        auto h = hyp_sessions.find(ids[i]);
        const SegmentList &ref = r == ref_sessions.end() ? empty : r->second;
        const SegmentList &hyp = h == hyp_sessions.end() ? empty : h->second;
        reports[i] = timed ? tcpwer(ref, hyp, opt.collar, tok)
                           : cpwer(ref, hyp, tok);
        ref_speaker_counts[i] = count_speakers(ref);
    });

    json report;
    report["metric"] = metric;
    json params;
    if (timed) {
        params["collar"] = std::isfinite(opt.collar) ? json(opt.collar)
                                                     : json("inf");
    }
    params["tokenizer"] = to_string(tok.mode);
    report["parameters"] = std::move(params);
    report["num_sessions"] = ids.size();

    ErrorCounts aggregate;
    json sessions = json::array();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        aggregate += reports[i].counts;
        json s = counts_json(reports[i].counts, reports[i].rate);
        s["session_id"] = ids[i];
        json mapping;
        for (const auto &[h, r] : reports[i].speaker_mapping) {
            mapping[h] = r;
        }
        s["speaker_mapping"] = std::move(mapping);
        sessions.push_back(std::move(s));
    }
    report["sessions"] = std::move(sessions);

    // Counts are summed before the rate is computed; the aggregate is never
    // a mean of per-session rates.
    std::optional<double> agg_rate;
    if (aggregate.ref_tokens > 0) {
        agg_rate = static_cast<double>(aggregate.total_errors()) /
                   static_cast<double>(aggregate.ref_tokens);
    }
    report["aggregate"] = counts_json(aggregate, agg_rate);

    if (opt.by_num_speakers) {
        std::map<std::size_t, ErrorCounts> groups;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            groups[ref_speaker_counts[i]] += reports[i].counts;
        }
        json by_spk;
        for (const auto &[n, counts] : groups) {
            std::optional<double> rate;
            if (counts.ref_tokens > 0) {
                rate = static_cast<double>(counts.total_errors()) /
                       static_cast<double>(counts.ref_tokens);
            }
            by_spk[std::to_string(n)] = counts_json(counts, rate);
        }
        report["by_num_speakers"] = std::move(by_spk);
    }

    emit(report, opt.out_path, out);
    return 0;
}

struct ScoreDerOptions {
    std::string ref_path;
    std::string hyp_path;
    double collar = 0.25;
    std::string uem_path;
    bool by_num_speakers = false;
    std::string out_path;
};

int run_score_der(const ScoreDerOptions &opt, std::ostream &out,
                  std::ostream &err) {
    auto ref_sessions = group_by_session(load_segments(opt.ref_path));
    auto hyp_sessions = group_by_session(load_segments(opt.hyp_path));
    auto ids = session_union(ref_sessions, hyp_sessions);

    std::map<std::string, std::vector<Interval>> uem;
    if (!opt.uem_path.empty()) {
        try {
            uem = parse_uem(read_file(opt.uem_path));
        } catch (const ParseError &e) {
            throw DataError(opt.uem_path + ": " + e.what());
        }
    }

    const SegmentList empty;
    std::vector<DerReport> reports(ids.size());
    std::vector<std::size_t> ref_speaker_counts(ids.size());
    parallel_for(ids.size(), [&](std::size_t i) {
        auto r = ref_sessions.find(ids[i]);
        auto h = hyp_sessions.find(ids[i]);
        const SegmentList &ref = r == ref_sessions.end() ? empty : r->second;
        const SegmentList &hyp = h == hyp_sessions.end() ? empty : h->second;
        std::optional<std::vector<Interval>> session_uem;
        if (auto u = uem.find(ids[i]); u != uem.end()) {
            session_uem = u->second;
        }
        reports[i] = der(ref, hyp, opt.collar, session_uem);
        ref_speaker_counts[i] = count_speakers(ref);
    });
    if (!opt.uem_path.empty()) {
        for (const auto &sid : ids) {
            if (!uem.count(sid)) {
                err << "warning: session '" << sid
                    << "' not in UEM; scored on its full extent\n";
            }
        }
    }

    json report;
    report["metric"] = "der";
    json params;
    params["collar"] = opt.collar;
    params["uem"] = opt.uem_path.empty() ? json(nullptr) : json(opt.uem_path);
    report["parameters"] = std::move(params);
    report["num_sessions"] = ids.size();

    DerReport aggregate;
    json sessions = json::array();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        aggregate.missed += reports[i].missed;
        aggregate.false_alarm += reports[i].false_alarm;
        aggregate.confusion += reports[i].confusion;
        aggregate.total_ref_speech += reports[i].total_ref_speech;
        json s = der_json(reports[i]);
        s["session_id"] = ids[i];
        sessions.push_back(std::move(s));
    }
    if (aggregate.total_ref_speech > 0.0) {
        aggregate.der =
            (aggregate.missed + aggregate.false_alarm + aggregate.confusion) /
            aggregate.total_ref_speech;
    }
    report["sessions"] = std::move(sessions);
    report["aggregate"] = der_json(aggregate);

    if (opt.by_num_speakers) {
        std::map<std::size_t, DerReport> groups;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            DerReport &g = groups[ref_speaker_counts[i]];
            g.missed += reports[i].missed;
            g.false_alarm += reports[i].false_alarm;
            g.confusion += reports[i].confusion;
            g.total_ref_speech += reports[i].total_ref_speech;
        }
        json by_spk;
        for (auto &[n, g] : groups) {
            if (g.total_ref_speech > 0.0) {
                g.der = (g.missed + g.false_alarm + g.confusion) /
                        g.total_ref_speech;
            }
            by_spk[std::to_string(n)] = der_json(g);
        }
        report["by_num_speakers"] = std::move(by_spk);
    }

    emit(report, opt.out_path, out);
    return 0;
}

std::uint64_t fnv1a(const std::string &s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Stable placeholder embedding derived from the speaker name; used when no
// embedding file is supplied.
SpeakerEmbedding derive_embedding(const std::string &speaker,
                                  std::size_t dim) {
    Rng rng(Rng::mix(fnv1a(speaker), 0xD1A2));
    SpeakerEmbedding emb;
    emb.values.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        emb.values.push_back(rng.uniform(-1.0, 1.0));
    }
    return emb;
}

struct PlanOptions {
    std::string input_path;
    double max_dur = 30.0;
    std::size_t max_segments = 10;
    std::size_t max_per_speaker = 4;
    double frame_rate = 100.0;
    std::string embeddings_path;
    std::size_t embedding_dim = 16;
    std::string out_path;
};

int run_plan_chunks(const PlanOptions &opt, std::ostream &out,
                    std::ostream &err) {
    auto sessions = group_by_session(load_segments(opt.input_path));
    ChunkConfig cfg{opt.max_dur, opt.max_segments, opt.max_per_speaker};
    cfg.validate();

    std::map<std::string, SpeakerEmbedding> file_embeddings;
    if (!opt.embeddings_path.empty()) {
        try {
            file_embeddings = embedding_map_from_json(
                json::parse(read_file(opt.embeddings_path)));
        } catch (const nlohmann::json::parse_error &e) {
            throw DataError(opt.embeddings_path + ": invalid JSON: " +
                            e.what());
        } catch (const ParseError &e) {
            throw DataError(opt.embeddings_path + ": " + e.what());
        }
    }

    json report;
    report["config"] = {{"max_chunk_duration", cfg.max_chunk_duration},
                        {"max_total_segments", cfg.max_total_segments},
                        {"max_segments_per_speaker",
                         cfg.max_segments_per_speaker},
                        {"frame_rate", opt.frame_rate}};
    json out_sessions = json::array();
    for (const auto &[sid, segs] : sessions) {
        std::map<std::string, SpeakerEmbedding> embeddings = file_embeddings;
        for (const auto &seg : segs) {
            if (!embeddings.count(seg.speaker)) {
                if (!opt.embeddings_path.empty()) {
                    throw DataError(opt.embeddings_path +
                                    ": no embedding for speaker '" +
                                    seg.speaker + "'");
                }
                embeddings[seg.speaker] =
                    derive_embedding(seg.speaker, opt.embedding_dim);
            }
        }
        std::vector<std::string> warnings;
        auto chunks =
            plan_chunks(segs, cfg, embeddings, opt.frame_rate, &warnings);
        for (const auto &w : warnings) {
            err << "warning: " << sid << ": " << w << "\n";
        }
        json js;
        js["session_id"] = sid;
        json chunk_arr = json::array();
        for (const auto &chunk : chunks) {
            chunk_arr.push_back(to_json(chunk));
        }
        js["chunks"] = std::move(chunk_arr);
        out_sessions.push_back(std::move(js));
    }
    report["sessions"] = std::move(out_sessions);
    emit(report, opt.out_path, out);
    return 0;
}

struct SimulateOptions {
    std::string pool_path;
    std::size_t n_speakers = 2;
    double max_dur = 30.0;
    double gap_min = -0.5;
    double gap_max = 0.5;
    double target_overlap = -1.0;
    std::uint64_t seed = 0;
    std::string out_path;
};

int run_simulate(const SimulateOptions &opt, std::ostream &out) {
    UtterancePool pool;
    try {
        pool = pool_from_json(json::parse(read_file(opt.pool_path)));
    } catch (const nlohmann::json::parse_error &e) {
        throw DataError(opt.pool_path + ": invalid JSON: " + e.what());
    } catch (const ParseError &e) {
        throw DataError(opt.pool_path + ": " + e.what());
    }

    Interval gaps{opt.gap_min, opt.gap_max};
    if (opt.target_overlap >= 0.0) {
        double mean_dur = 0.0;
        for (const auto &u : pool.utterances) {
            mean_dur += u.duration;
        }
        mean_dur /= static_cast<double>(std::max<std::size_t>(
            pool.utterances.size(), 1));
        gaps = gap_range_for_overlap(opt.target_overlap, mean_dur,
                                     opt.max_dur);
    }

    MixturePlan plan = simulate_mixture(pool, opt.n_speakers, opt.max_dur,
                                        gaps, opt.seed);
    json report = to_json(plan);
    report["seed"] = opt.seed;
    report["n_speakers"] = opt.n_speakers;
    report["max_duration"] = opt.max_dur;
    report["gap_range"] = {{"min", gaps.begin}, {"max", gaps.end}};
    emit(report, opt.out_path, out);
    return 0;
}

struct AugmentOptions {
    std::string input_path;
    double p_replace = 0.05;
    double p_drop = 0.10;
    double p_shuffle = 0.20;
    std::uint64_t seed = 0;
    std::string donors_path;
    std::string out_path;
};

int run_augment(const AugmentOptions &opt, std::ostream &out) {
    PromptStructure prompt;
    try {
        prompt = prompt_from_json(json::parse(read_file(opt.input_path)));
    } catch (const nlohmann::json::parse_error &e) {
        throw DataError(opt.input_path + ": invalid JSON: " + e.what());
    } catch (const ParseError &e) {
        throw DataError(opt.input_path + ": " + e.what());
    }

    std::vector<SpeakerEmbedding> donors;
    if (!opt.donors_path.empty()) {
        try {
            for (const auto &[name, emb] : embedding_map_from_json(
                     json::parse(read_file(opt.donors_path)))) {
                donors.push_back(emb);
            }
        } catch (const nlohmann::json::parse_error &e) {
            throw DataError(opt.donors_path + ": invalid JSON: " + e.what());
        } catch (const ParseError &e) {
            throw DataError(opt.donors_path + ": " + e.what());
        }
    } else {
        // Default donor pool: the embeddings already present in the prompt.
        for (const auto &slot : prompt.triplet_slots) {
            donors.push_back(slot.embedding);
        }
    }

    AugmentConfig cfg{opt.p_replace, opt.p_drop, opt.p_shuffle, opt.seed};
    PromptStructure augmented = augment(prompt, cfg, donors);
    emit(to_json(augmented), opt.out_path, out);
    return 0;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err) {
    CLI::App app{"diarization-aware multi-speaker ASR toolkit"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    auto *score = app.add_subcommand("score",
                                     "score a hypothesis against a reference");
    score->set_help_flag("--help", "print help and exit");
    score->require_subcommand(1);

    ScoreWerOptions cp_opt;
    auto *sc_cpwer = score->add_subcommand(
        "cpwer", "concatenated-permutation word error rate");
    sc_cpwer->set_help_flag("--help", "print help and exit");
    sc_cpwer->add_option("-r,--ref", cp_opt.ref_path, "reference file")
        ->required();
    sc_cpwer->add_option("-h,--hyp", cp_opt.hyp_path, "hypothesis file")
        ->required();
    sc_cpwer->add_option("--tokenizer", cp_opt.tokenizer,
                         "token mode (char recommended for Mandarin)")
        ->check(CLI::IsMember({"word", "char"}));
    sc_cpwer->add_flag("--by-num-speakers", cp_opt.by_num_speakers,
                       "group sessions by reference speaker count");
    sc_cpwer->add_option("-o,--out", cp_opt.out_path, "write report here");

    ScoreWerOptions tcp_opt;
    auto *sc_tcpwer = score->add_subcommand(
        "tcpwer", "time-constrained permutation word error rate");
    sc_tcpwer->set_help_flag("--help", "print help and exit");
    sc_tcpwer->add_option("-r,--ref", tcp_opt.ref_path, "reference file")
        ->required();
    sc_tcpwer->add_option("-h,--hyp", tcp_opt.hyp_path, "hypothesis file")
        ->required();
    sc_tcpwer->add_option("--collar", tcp_opt.collar,
                          "pairing tolerance in seconds")
        ->capture_default_str();
    sc_tcpwer->add_option("--tokenizer", tcp_opt.tokenizer,
                          "token mode (char recommended for Mandarin)")
        ->check(CLI::IsMember({"word", "char"}));
    sc_tcpwer->add_flag("--by-num-speakers", tcp_opt.by_num_speakers,
                        "group sessions by reference speaker count");
    sc_tcpwer->add_option("-o,--out", tcp_opt.out_path, "write report here");

    ScoreDerOptions der_opt;
    auto *sc_der = score->add_subcommand("der", "diarization error rate");
    sc_der->set_help_flag("--help", "print help and exit");
    sc_der->add_option("-r,--ref", der_opt.ref_path, "reference file")
        ->required();
    sc_der->add_option("-h,--hyp", der_opt.hyp_path, "hypothesis file")
        ->required();
    sc_der->add_option("--collar", der_opt.collar,
                       "boundary forgiveness in seconds")
        ->capture_default_str();
    sc_der->add_option("--uem", der_opt.uem_path, "UEM scoring regions");
    sc_der->add_flag("--by-num-speakers", der_opt.by_num_speakers,
                     "group sessions by reference speaker count");
    sc_der->add_option("-o,--out", der_opt.out_path, "write report here");

    PlanOptions plan_opt;
    auto *plan = app.add_subcommand("plan-chunks",
                                    "plan chunked inference for a session");
    plan->set_help_flag("--help", "print help and exit");
    plan->add_option("-i,--input", plan_opt.input_path,
                     "diarization (rttm) or transcript (seglst) file")
        ->required();
    plan->add_option("--max-dur", plan_opt.max_dur,
                     "max chunk duration in seconds")
        ->capture_default_str();
    plan->add_option("--max-segments", plan_opt.max_segments,
                     "max segments per chunk")
        ->capture_default_str();
    plan->add_option("--max-per-speaker", plan_opt.max_per_speaker,
                     "max segments per speaker per chunk")
        ->capture_default_str();
    plan->add_option("--frame-rate", plan_opt.frame_rate,
                     "frames per second for time normalization")
        ->capture_default_str();
    plan->add_option("--embeddings", plan_opt.embeddings_path,
                     "JSON map speaker -> embedding values");
    plan->add_option("--embedding-dim", plan_opt.embedding_dim,
                     "dim of derived placeholder embeddings")
        ->capture_default_str();
    plan->add_option("-o,--out", plan_opt.out_path, "write plan here");

    SimulateOptions sim_opt;
    auto *sim = app.add_subcommand("simulate",
                                   "simulate a multi-speaker mixture");
    sim->set_help_flag("--help", "print help and exit");
    sim->add_option("--pool", sim_opt.pool_path, "utterance pool JSON")
        ->required();
    sim->add_option("--n-speakers", sim_opt.n_speakers,
                    "distinct speakers in the mixture")
        ->capture_default_str();
    sim->add_option("--max-dur", sim_opt.max_dur, "mixture length bound")
        ->capture_default_str();
    auto *gap_min = sim->add_option("--gap-min", sim_opt.gap_min,
                                    "min inter-utterance gap (negative "
                                    "overlaps)")
                        ->capture_default_str();
    auto *gap_max = sim->add_option("--gap-max", sim_opt.gap_max,
                                    "max inter-utterance gap")
                        ->capture_default_str();
    sim->add_option("--target-overlap", sim_opt.target_overlap,
                    "derive the gap range from a target overlap ratio")
        ->excludes(gap_min)
        ->excludes(gap_max);
    sim->add_option("--seed", sim_opt.seed, "RNG seed")->capture_default_str();
    sim->add_option("-o,--out", sim_opt.out_path, "write plan here");

    AugmentOptions aug_opt;
    auto *aug = app.add_subcommand("augment",
                                   "augment a prompt structure");
    aug->set_help_flag("--help", "print help and exit");
    aug->add_option("-i,--input", aug_opt.input_path,
                    "prompt-record JSON file")
        ->required();
    aug->add_option("--p-replace", aug_opt.p_replace,
                    "embedding replacement probability")
        ->capture_default_str();
    aug->add_option("--p-drop", aug_opt.p_drop,
                    "triplet dropout probability")
        ->capture_default_str();
    aug->add_option("--p-shuffle", aug_opt.p_shuffle,
                    "triplet shuffle probability")
        ->capture_default_str();
    aug->add_option("--seed", aug_opt.seed, "RNG seed")->capture_default_str();
    aug->add_option("--donors", aug_opt.donors_path,
                    "JSON map speaker -> embedding values (defaults to the "
                    "prompt's own embeddings)");
    aug->add_option("-o,--out", aug_opt.out_path, "write result here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (sc_cpwer->parsed()) {
            return run_score_wer("cpwer", cp_opt, out);
        }
        if (sc_tcpwer->parsed()) {
            return run_score_wer("tcpwer", tcp_opt, out);
        }
        if (sc_der->parsed()) {
            return run_score_der(der_opt, out, err);
        }
        if (plan->parsed()) {
            return run_plan_chunks(plan_opt, out, err);
        }
        if (sim->parsed()) {
            return run_simulate(sim_opt, out);
        }
        if (aug->parsed()) {
            return run_augment(aug_opt, out);
        }
        err << "error: no subcommand\n";
        return 2;
    } catch (const DataError &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace diarasr
