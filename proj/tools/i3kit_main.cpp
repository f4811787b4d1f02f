#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "i3kit/report.hpp"

namespace {

i3kit::CorpusFormat parse_format(const std::string& name) {
  if (name == "csv") return i3kit::CorpusFormat::csv;
  if (name == "jsonl") return i3kit::CorpusFormat::jsonl;
  throw CLI::ValidationError("--format", "expected csv or jsonl");
}

int threads_from_env_or(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("I3KIT_THREADS")) {
    int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"percentile-based citation impact toolkit"};
  app.require_subcommand(1);

  std::string input, format_name = "csv", config_path;
  std::string group_by_name = "both", out_dir = "report";
  std::string min_share;
  std::vector<std::string> units;
  uint64_t seed = 0;
  int threads = 0;
  bool stamp = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "input records file")->required();
    cmd->add_option("--format", format_name, "csv|jsonl")->capture_default_str();
    cmd->add_option("--config", config_path, "grouping config JSON");
  };

  CLI::App* validate = app.add_subcommand("validate", "parse and check the input");
  add_common(validate);

  CLI::App* report = app.add_subcommand("report", "write the full report bundle");
  add_common(report);
  report->add_option("--group-by", group_by_name, "journal|country|both")->capture_default_str();
  report->add_option("--out", out_dir, "output directory")->capture_default_str();
  report->add_option("--seed", seed, "layout seed")->capture_default_str();
  report->add_option("--threads", threads, "worker threads (or I3KIT_THREADS)");
  report->add_option("--min-share", min_share, "country table share threshold (percent)");
  report->add_flag("--stamp", stamp, "include a timestamp in run.json");

  CLI::App* compare = app.add_subcommand("compare", "test units against each other");
  add_common(compare);
  compare->add_option("--units", units, "journal labels (two or more)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const i3kit::CorpusFormat format = parse_format(format_name);
    if (validate->parsed())
      return i3kit::cmd_validate(input, format, config_path, std::cout, std::cerr);
    if (compare->parsed())
      return i3kit::cmd_compare(input, format, config_path, units, std::cout, std::cerr);

    i3kit::ReportOptions options;
    options.input_path = input;
    options.format = format;
    options.config_path = config_path;
    options.group_by = i3kit::group_by_from_string(group_by_name);
    options.out_dir = out_dir;
    options.seed = seed;
    options.threads = threads_from_env_or(threads);
    if (!min_share.empty()) options.min_share_override = min_share;
    options.stamp = stamp;
    return i3kit::cmd_report(options, std::cout, std::cerr);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const i3kit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}
