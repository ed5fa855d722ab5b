#include <CLI11.hpp>

#include <csignal>
#include <iostream>

#include "ja/pipeline/commands.hpp"
#include "ja/pipeline/synthetic.hpp"
#include "ja/service/http_server.hpp"

namespace {

using namespace ja;

void print_errors(const std::vector<RunError>& errors) {
  for (const auto& e : errors) {
    std::cerr << "  " << e.video_id << " [" << e.kind << "] " << e.message << "\n";
  }
}

int report_run(const RunSummary& s, const std::string& what) {
  std::cout << what << " run " << s.run_id
            << (s.reused ? " (already complete)" : "") << ": " << s.outputs
            << " outputs, " << s.errors.size() << " errors"
            << (s.sealed ? "" : ", left open for retry") << "\n";
  print_errors(s.errors);
  return s.backend_failed() ? 3 : 0;
}

AnnotationServer* g_server = nullptr;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint-attention expert-alignment pipeline"};
  app.require_subcommand(1);
  std::string project = ".";
  app.add_option("-p,--project", project, "Project directory")->capture_default_str();

  ModelCommandOptions model;
  std::size_t chunk_size = 0;
  bool engagement = false;
  int max_parallel = 0;
  auto add_model_flags = [&](CLI::App* cmd) {
    cmd->add_option("--backend", model.backend, "mock or wire:<name>")->capture_default_str();
    cmd->add_option("--chunk-size", chunk_size, "Segments per request (0 = whole video)");
    cmd->add_flag("--engagement", engagement, "Include the engagement cue");
    cmd->add_option("--max-parallel", max_parallel, "Requests in flight")
        ->check(CLI::PositiveNumber);
  };

  auto* ingest_cmd = app.add_subcommand("ingest", "Validate a manifest and initialise the project");
  IngestOptions ingest_opts;
  std::string manifest, exemplars, config;
  bool synthetic = false;
  ingest_cmd->add_option("--manifest", manifest, "Manifest JSON");
  ingest_cmd->add_option("--exemplars", exemplars, "Exemplar library JSONL");
  ingest_cmd->add_option("--config", config, "Project configuration JSON");
  ingest_cmd->add_flag("--synthetic", synthetic,
                       "Write the synthetic 26-video study (manifest, raters, exemplars)");

  auto* describe_cmd = app.add_subcommand("describe", "Stage 1: behaviour descriptions");
  add_model_flags(describe_cmd);

  auto* judge_cmd = app.add_subcommand("judge", "Stage 2: segment judgements per condition");
  add_model_flags(judge_cmd);
  std::string conditions = "all", from;
  judge_cmd->add_option("--conditions", conditions,
                        "zero,few x reasoning,plain (e.g. zero or few,reasoning)")
      ->capture_default_str();
  judge_cmd->add_option("--from", from, "Describe run to judge");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Alignment reports against raters");
  EvaluateOptions eval_opts;
  std::string out;
  evaluate_cmd->add_option("--runs", eval_opts.runs, "Judge runs (default: all)")
      ->delimiter(',');
  evaluate_cmd->add_option("--out", out, "Also copy reports here");

  auto* serve_cmd = app.add_subcommand("serve", "Run the annotation service");
  std::string host = "127.0.0.1";
  int port = 8080;
  serve_cmd->add_option("--host", host)->capture_default_str();
  serve_cmd->add_option("--port", port)->capture_default_str();

  auto* export_cmd = app.add_subcommand("export", "Copy a run's artifacts");
  std::string run_id;
  export_cmd->add_option("--run", run_id, "Run id")->required();
  export_cmd->add_option("--out", out, "Destination directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (chunk_size > 0) model.chunk_size = chunk_size;
  if (engagement) model.engagement = true;
  if (max_parallel > 0) model.max_parallel = max_parallel;

  const ProjectStore store(project);
  try {
    if (*ingest_cmd) {
      if (synthetic) {
        manifest = write_synthetic_study(make_synthetic_study(), store.root()).string();
      }
      if (manifest.empty()) throw invalid_input("ingest needs --manifest or --synthetic");
      ingest_opts.manifest = manifest;
      if (!exemplars.empty()) ingest_opts.exemplars = exemplars;
      if (!config.empty()) ingest_opts.config = config;
      const auto r = ingest(store, ingest_opts);
      std::cout << "ingested " << r.video_count << " videos, " << r.segment_count
                << " segments\n";
      return 0;
    }
    if (*describe_cmd) return report_run(describe(store, model), "describe");
    if (*judge_cmd) {
      JudgeOptions opts;
      static_cast<ModelCommandOptions&>(opts) = model;
      opts.conditions = select_conditions(conditions);
      if (!from.empty()) opts.from_run = from;
      int code = 0;
      for (const auto& o : judge(store, opts)) {
        if (o.run) {
          code = std::max(code, report_run(*o.run, "judge " + to_string(o.condition)));
        } else {
          std::cerr << "judge " << to_string(o.condition) << " skipped ["
                    << to_string(*o.error_kind) << "] " << o.error_message << "\n";
          code = std::max(code, exit_code_for(*o.error_kind));
        }
      }
      return code;
    }
    if (*evaluate_cmd) {
      if (!out.empty()) eval_opts.out = out;
      const auto s = evaluate(store, eval_opts);
      std::cout << s.summary_text << "evaluate run " << s.run_id
                << (s.reused ? " (already complete)" : "") << ", " << s.reports.size()
                << " reports\n";
      return 0;
    }
    if (*serve_cmd) {
      AnnotationService service(store);
      AnnotationServer server(service);
      g_server = &server;
      std::signal(SIGINT, [](int) {
        if (g_server) g_server->stop();
      });
      std::cout << "serving " << store.root().string() << " on " << host << ":" << port
                << "\n";
      server.listen(host, port);
      return 0;
    }
    if (*export_cmd) {
      for (const auto& p : export_run(store, run_id, out)) std::cout << p.string() << "\n";
      return 0;
    }
  } catch (const ValidationFailures& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
