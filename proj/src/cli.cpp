#include "slidelab/cli.hpp"

#include "slidelab/config.hpp"
#include "slidelab/errors.hpp"
#include "slidelab/io.hpp"
#include "slidelab/workflows.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <functional>
#include <string>
#include <vector>

namespace slidelab::cli {

namespace {

struct Common {
  std::string config_path;
  std::string out;
  std::string preset;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "JSON config file");
  sub->add_option("--out", c.out, "output directory (overrides the config)");
  sub->add_option("--preset", c.preset, "starting document")
      ->check(CLI::IsMember(config::preset_names()));
  sub->add_option("--override", c.overrides, "key.path=value, repeatable")->take_all();
}

config::RunConfig resolve(const Common& c) {
  config::Json doc = c.preset.empty() ? config::default_document()
                                      : config::preset_document(c.preset);
  if (!c.config_path.empty()) config::merge(doc, config::read_file(c.config_path));
  for (const auto& o : c.overrides) config::apply_override(doc, o);
  if (!c.out.empty()) doc["out"] = c.out;
  return config::parse(doc);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"slidelab: slider on a clamped-clamped beam"};
  app.require_subcommand(1);
  Common common;
  using Action = std::function<void(const config::RunConfig&)>;
  std::vector<std::pair<CLI::App*, Action>> subs;

  const auto add = [&](const char* name, const char* help, Action a) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s, common);
    subs.emplace_back(s, std::move(a));
  };
  add("ssim", "analytical amplitude-position sweep", [&](const config::RunConfig& cfg) {
    const auto r = workflows::run_ssim(cfg);
    workflows::write_ssim(r, cfg.out);
    out << fmt::format("ssim: {} branches, {} turning points -> {}\n", r.sweep.branches.size(),
                       r.sweep.turning_points.size(), cfg.out);
  });
  add("simulate", "time integration at one slider position", [&](const config::RunConfig& cfg) {
    const auto r = workflows::run_simulate(cfg);
    workflows::write_simulate(r, cfg, cfg.out);
    out << fmt::format("simulate: envelope {:.4g} m, mean ds {:.3g} per period -> {}\n",
                       r.analysis.envelope_mean, r.analysis.transport.mean, cfg.out);
  });
  add("pcs-sweep", "forward and backward sweeps with the slider held in place",
      [&](const config::RunConfig& cfg) {
        const auto r = workflows::run_pcs(cfg);
        workflows::write_pcs(r, cfg.out);
        out << fmt::format("pcs-sweep: {} points each way -> {}\n", r.grid.size(), cfg.out);
      });
  add("locomotion-report", "closed-form locomotion quantities", [&](const config::RunConfig& cfg) {
    const auto r = workflows::run_locomotion(cfg);
    workflows::write_locomotion(r, cfg, cfg.out);
    out << fmt::format("locomotion-report: {} cases -> {}\n", r.report["cases"].size(), cfg.out);
  });
  add("signature-move", "free slider from the low branch until it stops",
      [&](const config::RunConfig& cfg) {
        const auto r = workflows::run_signature(cfg);
        workflows::write_signature(r, cfg.out);
        out << fmt::format("signature-move: {} after {:.1f} s, s = {:.4f} -> {}\n",
                           r.complete ? "complete" : "partial", r.simulated,
                           r.chunks.empty() ? cfg.signature.s0 : r.chunks.back().s, cfg.out);
      });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto& [sub, action] : subs) {
      if (sub->parsed()) action(resolve(common));
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace slidelab::cli
