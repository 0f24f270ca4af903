// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0

// vnkit CLI: validate, stats, compress, consolidate, build-instructions,
// generate, evaluate, report. Option precedence: flags > config file >
// environment > built-in defaults. All artifacts embed the resolved config
// and toolkit version; reruns with the same config byte-reproduce outputs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vnkit/core/rules.hpp"
#include "vnkit/data/dataset.hpp"
#include "vnkit/embed/provider.hpp"
#include "vnkit/error.hpp"
#include "vnkit/gen/orchestrator.hpp"
#include "vnkit/metrics/evaluate.hpp"
#include "vnkit/util/parallel.hpp"
#include "vnkit/version.hpp"
#include "vnkit/visual/compress.hpp"
#include "vnkit/visual/context.hpp"

namespace {

using nlohmann::json;
using namespace vnkit;

struct RunConfig {
  std::string dataset;
  std::string frames_store;
  std::string text_store;
  std::string stories;
  std::string storyline;
  std::string out;
  std::string config_file;
  std::string counting_mode = "auto";
  std::string mode = "generated";
  std::string backend = "template";
  std::string endpoint;
  std::string report_path;
  double tau = 0.9;
  std::size_t memory_capacity = 64;
  std::uint64_t seed = 0;
  int jobs = 1;
  int retries = 3;

  json to_json() const {
    return json{{"backend", backend},
                {"counting_mode", counting_mode},
                {"dataset", dataset},
                {"endpoint", endpoint},
                {"frames_store", frames_store},
                {"jobs", jobs},
                {"memory_capacity", memory_capacity},
                {"mode", mode},
                {"out", out},
                {"retries", retries},
                {"seed", seed},
                {"stories", stories},
                {"storyline", storyline},
                {"tau", tau},
                {"text_store", text_store}};
  }

  json metadata() const {
    return json{{"config", to_json()}, {"toolkit_version", kVersion}};
  }
};

// Fills option slots that were not set on the command line from the config
// file, then from the environment.
class Resolver {
 public:
  explicit Resolver(json cfg) : cfg_(std::move(cfg)) {}

  template <typename T>
  void apply(const CLI::Option* opt, T& value, const char* key,
             const char* env = nullptr) const {
    if (opt != nullptr && opt->count() > 0) return;
    if (cfg_.contains(key)) {
      value = cfg_[key].get<T>();
      return;
    }
    if (env != nullptr) {
      if (const char* v = std::getenv(env)) {
        if constexpr (std::is_same_v<T, std::string>) {
          value = v;
        } else {
          value = json::parse(std::string(v)).get<T>();
        }
      }
    }
  }

 private:
  json cfg_;
};

void write_text(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream os(path, std::ios::trunc | std::ios::binary);
  if (!os) throw IoError("cannot write output file: " + path);
  os << content;
}

std::unique_ptr<embed::EmbeddingProvider> make_provider(const std::string& spec,
                                                        const std::string& kind) {
  if (spec.empty()) throw InvalidInputError("no " + kind + " embedding source configured");
  if (spec.rfind("mock:", 0) == 0) {
    // mock:<dim>:<seed>
    const auto rest = spec.substr(5);
    const auto colon = rest.find(':');
    const auto dim = static_cast<std::uint32_t>(std::stoul(rest.substr(0, colon)));
    const std::uint64_t seed =
        colon == std::string::npos ? 0 : std::stoull(rest.substr(colon + 1));
    return std::make_unique<embed::HashEmbeddingProvider>(dim, seed);
  }
  if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0) {
    const char* token = std::getenv("VNKIT_EMBED_TOKEN");
    return std::make_unique<embed::HttpEmbeddingProvider>(spec, kind,
                                                          token ? token : "");
  }
  return std::make_unique<embed::StoreProvider>(embed::EmbeddingStore::load(spec));
}

data::LoadResult load_dataset_or_die(const RunConfig& cfg) {
  if (cfg.dataset.empty()) throw InvalidInputError("--dataset is required");
  return data::load_dataset(cfg.dataset);
}

void report_issues(const data::LoadResult& loaded) {
  for (const auto& issue : loaded.issues) {
    std::cerr << "line " << issue.line_no << ": " << issue.message << "\n";
  }
}

// --- subcommands ----------------------------------------------------------

int cmd_validate(const RunConfig& cfg) {
  const auto loaded = load_dataset_or_die(cfg);
  json issues = json::array();
  for (const auto& i : loaded.issues) {
    issues.push_back({{"line", i.line_no}, {"message", i.message}});
  }
  json out = {{"issues", issues},
              {"metadata", cfg.metadata()},
              {"num_invalid", loaded.issues.size()},
              {"num_valid", loaded.records.size()}};
  write_text(cfg.out, out.dump(2) + "\n");
  return loaded.issues.empty() ? 0 : 1;
}

int cmd_stats(const RunConfig& cfg) {
  const auto loaded = load_dataset_or_die(cfg);
  report_issues(loaded);
  const auto counting = text::CountingConfig::parse(cfg.counting_mode);
  const auto stats = data::compute_stats(loaded.records, counting);
  json out = {{"metadata", cfg.metadata()}, {"stats", stats.to_json()}};
  write_text(cfg.out, out.dump(2) + "\n");
  return 0;
}

int cmd_compress(const RunConfig& cfg) {
  const auto loaded = load_dataset_or_die(cfg);
  report_issues(loaded);
  const auto frames = make_provider(cfg.frames_store, "frame");
  const embed::EmbeddingStore* store = nullptr;
  if (auto* sp = dynamic_cast<const embed::StoreProvider*>(frames.get())) {
    store = &sp->store();
  }

  json videos;
  for (const auto& record : loaded.records) {
    const auto video = data::to_video_record(record, store);
    json clips;
    for (const auto& clip : video.clips) {
      const auto seq = visual::clip_frames(clip, *frames);
      const auto compressed = visual::compress_frames(seq, cfg.tau);
      clips[clip.clip_id] = {{"kept_indices", compressed.kept_indices},
                             {"num_input", seq.size()}};
    }
    videos[video.video_id] = clips;
  }
  json out = {{"metadata", cfg.metadata()}, {"videos", videos}};
  write_text(cfg.out, out.dump(2) + "\n");
  return 0;
}

int cmd_consolidate(const RunConfig& cfg) {
  const auto loaded = load_dataset_or_die(cfg);
  report_issues(loaded);
  const auto frames = make_provider(cfg.frames_store, "frame");
  const embed::EmbeddingStore* store = nullptr;
  if (auto* sp = dynamic_cast<const embed::StoreProvider*>(frames.get())) {
    store = &sp->store();
  }

  json videos;
  for (const auto& record : loaded.records) {
    const auto video = data::to_video_record(record, store);
    visual::MemoryState memory(cfg.memory_capacity);
    json steps = json::array();
    for (const auto& clip : video.clips) {
      const auto compressed =
          visual::compress_frames(visual::clip_frames(clip, *frames), cfg.tau);
      memory.absorb(compressed.frames.embeddings);
      steps.push_back({{"clip_id", clip.clip_id},
                       {"kept_indices", compressed.kept_indices},
                       {"memory_run_starts", memory.run_starts()},
                       {"memory_weights", memory.weights()}});
    }
    videos[video.video_id] = steps;
  }
  json out = {{"metadata", cfg.metadata()}, {"videos", videos}};
  write_text(cfg.out, out.dump(2) + "\n");
  return 0;
}

int cmd_build_instructions(const RunConfig& cfg) {
  const auto loaded = load_dataset_or_die(cfg);
  report_issues(loaded);
  const auto counting = text::CountingConfig::parse(cfg.counting_mode);

  const embed::EmbeddingStore* store = nullptr;
  embed::EmbeddingStore store_holder;
  if (!cfg.frames_store.empty() && cfg.frames_store.rfind("mock:", 0) != 0) {
    store_holder = embed::EmbeddingStore::load(cfg.frames_store);
    store = &store_holder;
  }

  std::vector<instruct::VideoSample> samples;
  samples.reserve(loaded.records.size());
  for (const auto& record : loaded.records) {
    samples.push_back(data::to_video_sample(record, counting, store));
  }

  instruct::BuilderConfig builder;
  builder.counting = counting;
  instruct::SampleMeta meta;
  meta.tau = cfg.tau;
  meta.memory_capacity = cfg.memory_capacity;
  meta.counting_mode = counting.name();

  const auto mode = instruct::storyline_mode_from_name(cfg.mode);
  const auto compiled = instruct::compile_training_samples(samples, mode, builder, meta);
  for (const auto& issue : compiled.issues) {
    std::cerr << "video " << issue.video_id << ": " << issue.message << "\n";
  }
  write_text(cfg.out, instruct::to_jsonl(compiled.samples));
  return 0;
}

int cmd_generate(const RunConfig& cfg) {
  const auto loaded = load_dataset_or_die(cfg);
  report_issues(loaded);
  const auto counting = text::CountingConfig::parse(cfg.counting_mode);
  const auto mode = instruct::storyline_mode_from_name(cfg.mode);

  // Requested storylines: file overrides the dataset's own labels.
  std::map<std::string, core::Storyline> requested;
  if (!cfg.storyline.empty()) {
    std::ifstream in(cfg.storyline);
    if (!in) throw IoError("cannot open storyline file: " + cfg.storyline);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto j = json::parse(line);
      core::Storyline sl;
      for (const auto& name : j.at("labels")) {
        const auto label = core::script_label_from_name(name.get<std::string>());
        if (!label) throw InvalidInputError("unknown label in storyline file: " +
                                            name.get<std::string>());
        sl.push_back(*label);
      }
      requested[j.at("video_id").get<std::string>()] = std::move(sl);
    }
  }

  gen::OrchestratorConfig orch;
  orch.builder.counting = counting;
  orch.max_retries = cfg.retries;
  orch.seed = cfg.seed;

  struct PerVideo {
    json story_line;
    json trace_line;
  };
  std::vector<PerVideo> outputs(loaded.records.size());

  util::parallel_for_ordered(loaded.records.size(), cfg.jobs, [&](std::size_t idx) {
    const auto& record = loaded.records[idx];
    // One backend per worker video; the template backend is stateless and the
    // http backend opens its own connection.
    std::unique_ptr<gen::GeneratorBackend> backend;
    if (cfg.backend == "template") {
      backend = std::make_unique<gen::TemplateBackend>(cfg.seed);
    } else if (cfg.backend == "http") {
      const char* token = std::getenv("VNKIT_GEN_TOKEN");
      backend = std::make_unique<gen::HttpGeneratorBackend>(cfg.endpoint,
                                                            token ? token : "");
    } else {
      throw InvalidInputError("unknown backend: " + cfg.backend);
    }

    const auto video = data::to_video_record(record);
    std::optional<core::Storyline> storyline;
    if (mode == instruct::StorylineMode::predefined) {
      auto it = requested.find(record.video_id);
      storyline = it != requested.end() ? it->second : data::to_storyline(record);
    }
    const auto result = gen::generate_story(video, data::to_knowledge(record), mode,
                                            storyline, *backend, orch);

    json narrations = json::array();
    for (std::size_t i = 0; i < result.story.narrations.size(); ++i) {
      const auto& narr = result.story.narrations[i];
      narrations.push_back({{"budget", {{"hi", narr.budget.hi}, {"lo", narr.budget.lo}}},
                            {"clip_id", video.clips[i].clip_id},
                            {"label", core::script_label_name(narr.label)},
                            {"text", narr.text},
                            {"unit_count", narr.unit_count}});
    }
    json storyline_json = json::array();
    for (auto label : result.storyline) storyline_json.push_back(core::script_label_name(label));

    outputs[idx].story_line = {{"metadata", cfg.metadata()},
                               {"mode", cfg.mode},
                               {"narrations", narrations},
                               {"storyline", storyline_json},
                               {"video_id", record.video_id}};

    json clip_traces = json::array();
    for (const auto& ct : result.trace.clips) {
      json attempts = json::array();
      for (const auto& a : ct.attempts) {
        attempts.push_back({{"parsed_label", a.parsed_label},
                            {"parsed_narration", a.parsed_narration},
                            {"prompt_hash", a.prompt_hash},
                            {"raw_output", a.raw_output},
                            {"unit_count", a.unit_count},
                            {"violations", a.violations},
                            {"warnings", a.warnings}});
      }
      clip_traces.push_back({{"accepted", ct.accepted},
                             {"attempts", attempts},
                             {"best_effort", ct.best_effort},
                             {"clip_id", ct.clip_id},
                             {"error", ct.error}});
    }
    outputs[idx].trace_line = {{"clips", clip_traces},
                               {"partial", result.trace.partial},
                               {"video_id", record.video_id}};
  });

  std::string stories_text, traces_text;
  for (const auto& o : outputs) {
    stories_text += o.story_line.dump();
    stories_text += '\n';
    traces_text += o.trace_line.dump();
    traces_text += '\n';
  }

  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << stories_text;
  } else {
    std::filesystem::create_directories(cfg.out);
    write_text(cfg.out + "/stories.jsonl", stories_text);
    write_text(cfg.out + "/traces.jsonl", traces_text);
  }
  return 0;
}

core::Story story_from_json(const json& line, const text::CountingConfig& counting) {
  core::Story story;
  for (const auto& nj : line.at("narrations")) {
    core::Narration n;
    n.text = nj.at("text").get<std::string>();
    const auto label = core::script_label_from_name(nj.at("label").get<std::string>());
    n.label = label.value_or(core::ScriptLabel::others);
    n.budget.lo = nj.at("budget").at("lo").get<int>();
    n.budget.hi = nj.at("budget").at("hi").get<int>();
    n.unit_count = nj.contains("unit_count") ? nj.at("unit_count").get<int>()
                                             : text::count_units(n.text, counting);
    story.narrations.push_back(std::move(n));
  }
  return story;
}

int cmd_evaluate(const RunConfig& cfg) {
  const auto loaded = load_dataset_or_die(cfg);
  report_issues(loaded);
  const auto counting = text::CountingConfig::parse(cfg.counting_mode);
  const auto frames = make_provider(cfg.frames_store, "frame");
  const auto text_provider = make_provider(cfg.text_store, "text");
  const embed::EmbeddingStore* frame_store = nullptr;
  if (auto* sp = dynamic_cast<const embed::StoreProvider*>(frames.get())) {
    frame_store = &sp->store();
  }
  const text::LexiconTagger tagger;  // empty lexicon: all tokens tag as other

  // Candidate stories: generated file, or the dataset's own narrations.
  std::map<std::string, json> story_lines;
  const bool with_reference = !cfg.stories.empty();
  if (with_reference) {
    std::ifstream in(cfg.stories);
    if (!in) throw IoError("cannot open stories file: " + cfg.stories);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = json::parse(line);
      story_lines[j.at("video_id").get<std::string>()] = std::move(j);
    }
  }

  // Corpus statistics over the references (one document per video).
  metrics::CorpusDf corpus_df;
  if (with_reference) {
    std::vector<std::vector<std::vector<std::string>>> documents;
    for (const auto& record : loaded.records) {
      const auto ref = data::to_story(record, counting);
      documents.push_back({metrics::story_tokens(ref)});
    }
    corpus_df = metrics::build_corpus_df(documents);
  }

  metrics::EvalConfig eval_cfg;
  std::vector<metrics::MetricReport> reports(loaded.records.size());
  std::vector<json> per_video(loaded.records.size());

  util::parallel_for_ordered(loaded.records.size(), cfg.jobs, [&](std::size_t idx) {
    const auto& record = loaded.records[idx];
    const auto video = data::to_video_record(record, frame_store);
    const auto knowledge = data::to_knowledge(record);
    const auto reference = data::to_story(record, counting);

    core::Story story = reference;
    std::optional<core::Story> ref_opt;
    std::optional<core::Storyline> requested;
    if (with_reference) {
      auto it = story_lines.find(record.video_id);
      if (it == story_lines.end()) {
        throw InvalidInputError("stories file has no entry for video " + record.video_id);
      }
      story = story_from_json(it->second, counting);
      ref_opt = reference;
      if (it->second.value("mode", "") == "predefined") {
        requested = data::to_storyline(record);
      }
    }

    metrics::ClipFrameEmbeddings clip_frames;
    for (const auto& clip : video.clips) {
      clip_frames.push_back(visual::clip_frames(clip, *frames).embeddings);
    }

    reports[idx] = metrics::evaluate(story, video, knowledge, ref_opt, clip_frames,
                                     *text_provider, tagger, eval_cfg,
                                     with_reference ? &corpus_df : nullptr, requested);
    per_video[idx] = {{"report", reports[idx].to_json()}, {"video_id", record.video_id}};
  });

  json out = {{"aggregate", metrics::aggregate_reports(reports)},
              {"metadata", cfg.metadata()},
              {"metric_metadata", eval_cfg.metadata()},
              {"per_video", per_video}};
  write_text(cfg.out, out.dump(2) + "\n");
  return 0;
}

int cmd_report(const RunConfig& cfg) {
  std::ifstream in(cfg.report_path);
  if (!in) throw IoError("cannot open report file: " + cfg.report_path);
  json j = json::parse(in);
  if (j.contains("aggregate")) {
    std::cout << "corpus aggregate (" << j["aggregate"].value("num_videos", 0)
              << " videos)\n";
    std::cout << metrics::render_report_table(j["aggregate"]);
  } else {
    std::cout << metrics::render_report_table(j);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vnkit: synchronized video narration toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto add_common = [&](CLI::App* cmd) {
    std::map<std::string, CLI::Option*> opts;
    opts["dataset"] = cmd->add_option("--dataset", cfg.dataset, "dataset JSONL path");
    opts["frames_store"] =
        cmd->add_option("--frames-store", cfg.frames_store,
                        "frame embeddings: store path, mock:<dim>:<seed>, or http URL");
    opts["text_store"] =
        cmd->add_option("--text-store", cfg.text_store,
                        "text embeddings: store path, mock:<dim>:<seed>, or http URL");
    opts["out"] = cmd->add_option("--out", cfg.out, "output path ('-' for stdout)");
    opts["tau"] = cmd->add_option("--tau", cfg.tau, "visual compression threshold");
    opts["memory_capacity"] = cmd->add_option("--memory-capacity", cfg.memory_capacity,
                                              "visual memory token capacity");
    opts["counting_mode"] = cmd->add_option("--counting-mode", cfg.counting_mode,
                                            "auto | token_count | character_count");
    opts["mode"] = cmd->add_option("--mode", cfg.mode, "generated | predefined");
    opts["storyline"] =
        cmd->add_option("--storyline", cfg.storyline, "storyline JSONL (predefined mode)");
    opts["backend"] = cmd->add_option("--backend", cfg.backend, "template | http");
    opts["endpoint"] =
        cmd->add_option("--endpoint", cfg.endpoint, "generator endpoint (env VNKIT_ENDPOINT)");
    opts["seed"] = cmd->add_option("--seed", cfg.seed, "deterministic seed");
    opts["jobs"] = cmd->add_option("--jobs", cfg.jobs, "worker threads across videos");
    opts["retries"] = cmd->add_option("--retries", cfg.retries, "generation attempts per clip");
    opts["stories"] =
        cmd->add_option("--stories", cfg.stories, "generated stories JSONL to evaluate");
    cmd->add_option("--config", cfg.config_file, "JSON config file");
    return opts;
  };

  std::map<std::string, std::map<std::string, CLI::Option*>> cmd_opts;
  CLI::App* validate = app.add_subcommand("validate", "check a dataset file");
  cmd_opts["validate"] = add_common(validate);
  CLI::App* stats = app.add_subcommand("stats", "corpus statistics");
  cmd_opts["stats"] = add_common(stats);
  CLI::App* compress = app.add_subcommand("compress", "per-clip frame compression");
  cmd_opts["compress"] = add_common(compress);
  CLI::App* consolidate =
      app.add_subcommand("consolidate", "streaming memory consolidation per video");
  cmd_opts["consolidate"] = add_common(consolidate);
  CLI::App* build =
      app.add_subcommand("build-instructions", "compile training samples JSONL");
  cmd_opts["build-instructions"] = add_common(build);
  CLI::App* generate = app.add_subcommand("generate", "sequential story generation");
  cmd_opts["generate"] = add_common(generate);
  CLI::App* evaluate = app.add_subcommand("evaluate", "run the metric suite");
  cmd_opts["evaluate"] = add_common(evaluate);
  CLI::App* report = app.add_subcommand("report", "render a report as a text table");
  report->add_option("--report", cfg.report_path, "report JSON produced by evaluate")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    const std::string name = active->get_name();

    if (name != "report") {
      json file_cfg = json::object();
      if (!cfg.config_file.empty()) {
        std::ifstream in(cfg.config_file);
        if (!in) throw IoError("cannot open config file: " + cfg.config_file);
        file_cfg = json::parse(in);
      }
      Resolver resolver(file_cfg);
      auto& opts = cmd_opts[name];
      resolver.apply(opts["dataset"], cfg.dataset, "dataset");
      resolver.apply(opts["frames_store"], cfg.frames_store, "frames_store");
      resolver.apply(opts["text_store"], cfg.text_store, "text_store");
      resolver.apply(opts["out"], cfg.out, "out");
      resolver.apply(opts["tau"], cfg.tau, "tau");
      resolver.apply(opts["memory_capacity"], cfg.memory_capacity, "memory_capacity");
      resolver.apply(opts["counting_mode"], cfg.counting_mode, "counting_mode");
      resolver.apply(opts["mode"], cfg.mode, "mode");
      resolver.apply(opts["storyline"], cfg.storyline, "storyline");
      resolver.apply(opts["backend"], cfg.backend, "backend");
      resolver.apply(opts["endpoint"], cfg.endpoint, "endpoint", "VNKIT_ENDPOINT");
      resolver.apply(opts["seed"], cfg.seed, "seed");
      resolver.apply(opts["jobs"], cfg.jobs, "jobs");
      resolver.apply(opts["retries"], cfg.retries, "retries");
      resolver.apply(opts["stories"], cfg.stories, "stories");
    }

    if (name == "validate") return cmd_validate(cfg);
    if (name == "stats") return cmd_stats(cfg);
    if (name == "compress") return cmd_compress(cfg);
    if (name == "consolidate") return cmd_consolidate(cfg);
    if (name == "build-instructions") return cmd_build_instructions(cfg);
    if (name == "generate") return cmd_generate(cfg);
    if (name == "evaluate") return cmd_evaluate(cfg);
    if (name == "report") return cmd_report(cfg);
    std::cerr << "unknown subcommand\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
