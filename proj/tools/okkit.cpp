// Command-line front end. Talks to the library only through the C API.
#include <okkit/okkit.h>

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kNumerical = 1;
constexpr int kUsage = 2;

// Carries an exit code out of a command.
struct Exit {
  int code;
};

int report(okkit_status s) {
  std::cerr << "okkit: error (" << okkit_status_name(s) << "): " << okkit_last_error() << "\n";
  return okkit_status_is_numerical(s) ? kNumerical : kUsage;
}

void check(okkit_status s) {
  if (s != OKKIT_OK) throw Exit{report(s)};
}

struct EntryDeleter {
  void operator()(okkit_entry* e) const { okkit_entry_free(e); }
};
using EntryPtr = std::unique_ptr<okkit_entry, EntryDeleter>;

struct BatchDeleter {
  void operator()(okkit_flow_batch* b) const { okkit_flow_batch_free(b); }
};
struct ReportDeleter {
  void operator()(okkit_check_report* r) const { okkit_check_report_free(r); }
};

// Takes ownership of a C string from the library.
std::string take(char* s) {
  std::string out(s ? s : "");
  okkit_free(s);
  return out;
}

bool looks_like_file(const std::string& input) {
  return input.find('/') != std::string::npos || (input.size() > 5 && input.substr(input.size() - 5) == ".json") ||
         fs::exists(input);
}

okkit_status open_entry(const std::string& input, EntryPtr& out) {
  okkit_entry* e = nullptr;
  okkit_status s = looks_like_file(input) ? okkit_entry_load_file(input.c_str(), &e) : okkit_entry_load(input.c_str(), &e);
  out.reset(e);
  return s;
}

EntryPtr load(const std::string& input) {
  EntryPtr e;
  check(open_entry(input, e));
  return e;
}

void write_file(const fs::path& dir, const std::string& name, const std::string& content) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  fs::path path = dir / name;
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << content)) {
    std::cerr << "okkit: error (io): cannot write " << path << "\n";
    throw Exit{kUsage};
  }
  std::cout << "wrote " << path.string() << "\n";
}

struct Common {
  std::string input;
  std::string out = ".";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("input", c.input, "catalog entry name or entry JSON file")->required();
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
}

int cmd_list() {
  for (std::size_t i = 0; i < okkit_catalog_size(); ++i) {
    const char *name = nullptr, *desc = nullptr;
    check(okkit_catalog_name(i, &name, &desc));
    std::printf("%-24s %s\n", name, desc);
  }
  return kOk;
}

int cmd_body(const Common& c) {
  auto e = load(c.input);
  char* text = nullptr;
  check(okkit_body_json(e.get(), &text));
  std::string body = take(text);
  check(okkit_body_svg(e.get(), nullptr, 0, &text));
  std::string svg = take(text);
  const std::string name = okkit_entry_name(e.get());
  write_file(c.out, name + ".body.json", body);
  write_file(c.out, name + ".body.svg", svg);
  auto j = json::parse(body);
  std::cout << "volume " << j["volume"][0] << "/" << j["volume"][1] << ", " << j["vertices"].size() << " vertices\n";
  return kOk;
}

int cmd_degenerate(const Common& c, const std::vector<double>& fiber) {
  auto e = load(c.input);
  char* text = nullptr;
  check(okkit_family_json(e.get(), &text));
  const std::string name = okkit_entry_name(e.get());
  write_file(c.out, name + ".family.json", take(text));
  if (!fiber.empty()) {
    check(okkit_fiber_json(e.get(), fiber[0], fiber.size() > 1 ? fiber[1] : 0.0, &text));
    write_file(c.out, name + ".fiber.json", take(text));
  }
  return kOk;
}

struct FlowArgs {
  double epsilon = -1;
  double delta = -1;
  std::size_t samples = 50;
  std::uint64_t seed = 1;
};

int cmd_flow(const Common& c, const FlowArgs& a) {
  auto e = load(c.input);
  okkit_flow_options opt;
  check(okkit_flow_options_default(e.get(), &opt));
  if (a.epsilon > 0) opt.epsilon = a.epsilon;
  if (a.delta > 0) opt.delta = a.delta;
  okkit_flow_batch* raw = nullptr;
  check(okkit_flow_run(e.get(), &opt, a.samples, a.seed, &raw));
  std::unique_ptr<okkit_flow_batch, BatchDeleter> batch(raw);

  const std::string name = okkit_entry_name(e.get());
  char* text = nullptr;
  check(okkit_flow_batch_trajectories_csv(batch.get(), &text));
  write_file(c.out, name + ".trajectories.csv", take(text));
  check(okkit_flow_batch_summary_csv(batch.get(), &text));
  write_file(c.out, name + ".samples.csv", take(text));
  check(okkit_flow_batch_diagnostics_json(batch.get(), &text));
  std::string diag = take(text);
  write_file(c.out, name + ".flow.json", diag);
  check(okkit_flow_batch_svg(batch.get(), &text));
  write_file(c.out, name + ".flow.svg", take(text));

  auto j = json::parse(diag);
  std::size_t total = okkit_flow_batch_size(batch.get()), ok = okkit_flow_batch_succeeded(batch.get());
  std::cout << ok << "/" << total << " samples succeeded\n";
  if (j.contains("F_min")) std::cout << "F range " << j["F_min"].dump() << " .. " << j["F_max"].dump() << "\n";
  if (j.contains("coverage")) std::printf("coverage %.2f%% of the body\n", 100 * j["coverage"].get<double>());
  return 10 * ok >= 9 * total ? kOk : kNumerical;
}

int cmd_check(const Common& c, std::uint64_t seed, bool extended) {
  EntryPtr e;
  okkit_status s = open_entry(c.input, e);
  if (s != OKKIT_OK) {
    std::printf("check  status  detail\n-----  ------  ------\nload   FAIL    %s: %s\n", okkit_status_name(s),
                okkit_last_error());
    return okkit_status_is_numerical(s) ? kNumerical : kUsage;
  }
  okkit_check_report* raw = nullptr;
  check(okkit_check_run(e.get(), seed, extended ? 1 : 0, &raw));
  std::unique_ptr<okkit_check_report, ReportDeleter> rep(raw);
  char* text = nullptr;
  check(okkit_check_report_table(rep.get(), &text));
  std::cout << take(text);
  return okkit_check_report_passed(rep.get()) ? kOk : kNumerical;
}

int cmd_slice(const Common& c, const std::string& hom_file, long bound, std::uint64_t seed) {
  auto e = load(c.input);
  std::vector<long> flat;
  std::size_t nrows = 0;
  if (!hom_file.empty()) {
    std::ifstream f(hom_file);
    if (!f) {
      std::cerr << "okkit: error (io): cannot read " << hom_file << "\n";
      return kUsage;
    }
    std::vector<std::vector<long>> rows;
    try {
      json j = json::parse(f);
      rows = (j.is_object() ? j.at("rows") : j).get<std::vector<std::vector<long>>>();
    } catch (const json::exception& ex) {
      std::cerr << "okkit: error (parse): homomorphism file: " << ex.what() << "\n";
      return kUsage;
    }
    for (const auto& r : rows) {
      if (r.size() != okkit_entry_rank(e.get()) + 1) {
        std::cerr << "okkit: error (dimension): homomorphism rows need rank + 1 = " << okkit_entry_rank(e.get()) + 1
                  << " entries\n";
        return kUsage;
      }
      flat.insert(flat.end(), r.begin(), r.end());
    }
    nrows = rows.size();
    if (nrows == 0) {
      std::cerr << "okkit: error (usage): homomorphism has no rows\n";
      return kUsage;
    }
  }
  const long* rows = hom_file.empty() ? nullptr : flat.data();
  char* text = nullptr;
  check(okkit_slice_json(e.get(), rows, nrows, bound, 50, seed, &text));
  std::string out = take(text);
  json j = json::parse(out);
  double residual = j["commutation_residual"].get<double>();
  write_file(c.out, std::string(okkit_entry_name(e.get())) + ".slice.json", out);
  std::printf("slice: %zu vertices; commutation residual %.3e\n", j["body"]["vertices"].size(), residual);
  return residual < 1e-6 ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"okkit: Newton-Okounkov bodies, toric degenerations and gradient-Hamiltonian flows"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; keys are prefixed by the command, e.g. flow.samples = 200");
  app.allow_config_extras(CLI::config_extras_mode::error);

  app.add_subcommand("list", "list the built-in catalog");

  Common body_c;
  auto* body = app.add_subcommand("body", "write the Okounkov body as JSON and SVG");
  add_common(body, body_c);

  Common deg_c;
  std::vector<double> fiber;
  auto* degen = app.add_subcommand("degenerate", "write the toric degeneration family as JSON");
  add_common(degen, deg_c);
  degen->add_option("--fiber", fiber, "also write the fiber equations at t = re [im]")->expected(1, 2);

  Common flow_c;
  FlowArgs flow_a;
  auto* flow = app.add_subcommand("flow", "flow samples to the toric fiber and evaluate the integrable system");
  add_common(flow, flow_c);
  flow->add_option("--epsilon", flow_a.epsilon, "start fiber (default: entry setting)");
  flow->add_option("--delta", flow_a.delta, "terminal cutoff (default: entry setting)");
  flow->add_option("--samples", flow_a.samples, "number of random points")->capture_default_str();
  flow->add_option("--seed", flow_a.seed, "random seed")->capture_default_str();

  Common check_c;
  std::uint64_t check_seed = 1;
  bool extended = false;
  auto* chk = app.add_subcommand("check", "run the invariant suite");
  add_common(chk, check_c);
  chk->add_option("--seed", check_seed, "random seed")->capture_default_str();
  chk->add_flag("--extended", extended, "also run flow checks on slow entries");

  Common slice_c;
  std::string hom_file;
  long bound = 0;
  std::uint64_t slice_seed = 1;
  auto* slc = app.add_subcommand("slice", "slice the semigroup and body by a grading homomorphism");
  add_common(slc, slice_c);
  slc->add_option("--homomorphism", hom_file, "JSON integer matrix (default: the entry's own)");
  slc->add_option("--bound", bound, "level bound for the sliced semigroup (0 = automatic)");
  slc->add_option("--seed", slice_seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (app.got_subcommand("list")) return cmd_list();
    if (app.got_subcommand(body)) return cmd_body(body_c);
    if (app.got_subcommand(degen)) return cmd_degenerate(deg_c, fiber);
    if (app.got_subcommand(flow)) {
      if (flow_a.samples == 0) {
        std::cerr << "okkit: error (usage): --samples must be positive\n";
        return kUsage;
      }
      return cmd_flow(flow_c, flow_a);
    }
    if (app.got_subcommand(chk)) return cmd_check(check_c, check_seed, extended);
    if (app.got_subcommand(slc)) return cmd_slice(slice_c, hom_file, bound, slice_seed);
  } catch (const Exit& e) {
    return e.code;
  }
  return kUsage;
}
