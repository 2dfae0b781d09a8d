#include "trigbound/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "trigbound/bounds.hpp"
#include "trigbound/design.hpp"
#include "trigbound/errors.hpp"
#include "trigbound/filter_bank.hpp"
#include "trigbound/io.hpp"
#include "trigbound/reconstruction.hpp"
#include "trigbound/synthesis.hpp"
#include "trigbound/toeplitz.hpp"

namespace trigbound::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// JSON has no inf/nan; spell them out instead of emitting null.
json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json report_json(const bounds::BoundReport& r) {
  return {{"N", r.N},
          {"n", r.n},
          {"d", r.d},
          {"constant", bounds::to_string(r.constant)},
          {"cnd_sharp", number(r.cnd_sharp)},
          {"cnd_simple", number(r.cnd_simple)},
          {"A", number(r.A)},
          {"B", number(r.B)},
          {"upper_bound", number(r.upper)},
          {"lower_bound", number(r.lower)},
          {"kappa", number(r.kappa)},
          {"threshold_sharp", number(r.threshold_sharp)},
          {"threshold_simple", number(r.threshold_simple)},
          {"certified", r.certified_positive}};
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    io::write_text(path, text);
  }
}

// Flags shared by bound and certify.
struct PolyInput {
  std::string poly;
  std::string grid;
  int degree = -1;
  int N = 0;
  std::string constant = "sharp";
};

void add_poly_input(CLI::App* cmd, PolyInput& in) {
  auto* poly = cmd->add_option("--poly", in.poly, "TrigPoly JSON file")->check(CLI::ExistingFile);
  auto* grid = cmd->add_option("--grid", in.grid, "SampleGrid CSV file (needs --degree)")
                   ->check(CLI::ExistingFile);
  poly->excludes(grid);
  cmd->add_option("--degree", in.degree, "component degree n of the sampled polynomial")
      ->needs(grid)
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--N", in.N, "samples per axis (with --poly)")->check(CLI::PositiveNumber);
  cmd->add_option("--constant", in.constant, "bound constant")
      ->check(CLI::IsMember({"sharp", "simple"}))
      ->capture_default_str();
}

struct Sampled {
  GridExtrema extrema;
  int n = 0;
};

Sampled sample_input(const PolyInput& in) {
  if (!in.poly.empty()) {
    if (in.N < 1) throw ArgumentError("--N is required with --poly");
    const TrigPoly p = io::read_poly(in.poly);
    return {sample_extrema(p, in.N), p.degree()};
  }
  if (in.grid.empty()) throw ArgumentError("one of --poly or --grid is required");
  if (in.degree < 0) throw ArgumentError("--degree is required with --grid");
  const SampleGrid g = io::read_grid(in.grid);
  if (in.N > 0 && in.N != g.grid_size()) throw ArgumentError("--N does not match the grid file");
  return {extrema(g), in.degree};
}

json poly_config(const std::string& cmd, const PolyInput& in, int N) {
  json c = {{"command", cmd}, {"N", N}, {"constant", in.constant}};
  if (!in.poly.empty()) c["poly"] = in.poly;
  if (!in.grid.empty()) {
    c["grid"] = in.grid;
    c["degree"] = in.degree;
  }
  return c;
}

int cmd_bound(const PolyInput& in, const std::string& out_path, std::ostream& out) {
  const Sampled s = sample_input(in);
  const auto which = bounds::constant_from_string(in.constant);
  const auto& g = s.extrema;
  json j = {{"version", version()}, {"config", poly_config("bound", in, g.grid_size)}};
  j["dim"] = g.dim;
  j["degree"] = s.n;
  j["grid_max_abs"] = number(g.max_abs);
  j["upper_bound_complex"] = number(bounds::upper_bound_complex(g, s.n, which));
  j["real"] = g.is_real();
  if (g.is_real()) j["report"] = report_json(bounds::certify_positive(g, s.n, which));
  json prior = json::object();
  for (const auto& [name, b] : bounds::prior_bounds(g, s.n)) {
    prior[name] = {{"constant", number(b.constant)}, {"bound", number(b.bound)}};
  }
  j["prior_bounds"] = prior;
  emit(j, out_path, out);
  return kOk;
}

int cmd_certify(const PolyInput& in, std::ostream& out) {
  const Sampled s = sample_input(in);
  const auto which = bounds::constant_from_string(in.constant);
  json j = {{"version", version()}, {"config", poly_config("certify", in, s.extrema.grid_size)}};
  if (!s.extrema.is_real()) {
    j["real"] = false;
    j["certified"] = false;
    emit(j, "", out);
    return kNotCertified;
  }
  const auto r = bounds::certify_positive(s.extrema, s.n, which);
  j["real"] = true;
  j["report"] = report_json(r);
  j["certified"] = r.certified_positive;
  emit(j, "", out);
  return r.certified_positive ? kOk : kNotCertified;
}

struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

Range parse_range(const std::string& text) {
  Range r;
  char c1 = 0;
  char c2 = 0;
  std::istringstream ss(text);
  ss.imbue(std::locale::classic());
  if (!(ss >> r.start >> c1 >> r.stop >> c2 >> r.step) || c1 != ':' || c2 != ':' ||
      !(ss >> std::ws).eof()) {
    throw ArgumentError("--ratios must be start:stop:step, got '" + text + "'");
  }
  if (!(r.step > 0.0) || r.stop < r.start || r.start <= 0.0) {
    throw ArgumentError("--ratios needs 0 < start <= stop and step > 0");
  }
  return r;
}

std::string csv_number(double v) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.precision(12);
  s << v;
  return s.str();
}

int cmd_fig_opnorm(int n, const std::string& ratios, int d, const std::string& out_path,
                   std::ostream& out) {
  const Range r = parse_range(ratios);
  const int count = static_cast<int>(std::floor((r.stop - r.start) / r.step + 1e-9)) + 1;
  std::ostringstream csv;
  csv << "ratio,N,cnd_sharp,cnd_simple,ehlich_zeller\n";
  for (int i = 0; i < count; ++i) {
    const double ratio = r.start + i * r.step;
    const int N = static_cast<int>(std::lround(ratio * 2.0 * n));
    if (N < 2 * n + 1) continue;
    const auto ez = bounds::ehlich_zeller_constant(N, n, d);
    csv << csv_number(ratio) << "," << N << "," << csv_number(bounds::cnd_sharp(N, n, d)) << ","
        << csv_number(bounds::cnd_simple(N, n, d)) << "," << (ez ? csv_number(*ez) : "") << "\n";
  }
  if (out_path.empty()) {
    out << csv.str();
  } else {
    io::write_text(out_path, csv.str());
  }
  return kOk;
}

int cmd_toeplitz(const std::string& gen, int N, const std::string& constant,
                 const std::string& out_path, std::ostream& out) {
  const auto spec = io::read_toeplitz(gen);
  const auto range = toeplitz::eigen_range(spec, N, bounds::constant_from_string(constant));
  json j = {{"version", version()},
            {"config", {{"command", "toeplitz-eig"}, {"gen", gen}, {"N", N}, {"constant", constant}}},
            {"lower", number(range.lower)},
            {"upper", number(range.upper)}};
  emit(j, out_path, out);
  return kOk;
}

int certify_grid_for(const fb::FilterBank& bank, int requested) {
  const int m = fb::degree_bound(bank.size(), bank.downsample(), 2);
  return std::max(requested, 2 * m + 1);
}

int cmd_fb_design(const std::string& spec_path, const std::string& out_path,
                  std::optional<int> synth_flag, int check_grid, std::ostream& out) {
  const io::DesignFile file = io::read_design(spec_path);
  const auto& spec = file.spec;
  const std::optional<int> synth_size = synth_flag ? synth_flag : file.synth_size;
  json config = {{"command", "fb-design"},
                 {"spec", spec_path},
                 {"out", out_path},
                 {"channels", spec.channels},
                 {"size", spec.size},
                 {"s", spec.s},
                 {"N", spec.grid_size},
                 {"alpha", spec.alpha},
                 {"beta", spec.beta},
                 {"gamma", spec.gamma},
                 {"iters", spec.iters},
                 {"lr", spec.learning_rate},
                 {"seed", spec.seed},
                 {"init", fb::to_string(spec.init)},
                 {"init_scale", spec.init_scale},
                 {"penalty_scale", spec.penalty_scale},
                 {"desired", file.desired_source}};
  json j = {{"version", version()}};
  fb::FilterBank analysis(1, 1, 1);
  if (synth_size) {
    config["synth_size"] = *synth_size;
    config["check_grid"] = check_grid;
    auto res = fb::design_with_synthesis(spec, *synth_size, check_grid);
    io::write_bank(out_path, res.analysis, &res.synthesis);
    j["objective"] = number(res.history.empty() ? std::nan("") : res.history.back());
    j["restarts"] = res.restarts;
    j["backtracks"] = res.backtracks;
    j["adam_residual"] = number(res.adam_residual);
    j["residual"] = number(res.residual);
    if (res.warning) j["warning"] = *res.warning;
    analysis = std::move(res.analysis);
  } else {
    auto res = fb::design(spec);
    io::write_bank(out_path, res.bank);
    j["objective"] = number(res.history.empty() ? std::nan("") : res.history.back());
    j["restarts"] = res.restarts;
    j["backtracks"] = res.backtracks;
    analysis = std::move(res.bank);
  }
  j["config"] = config;
  const int N = certify_grid_for(analysis, spec.grid_size);
  const auto report = fb::certify_pr(analysis, N);
  j["certificate"] = report_json(report);
  j["ph_degree"] = fb::degree_bound(analysis.size(), analysis.downsample(), 2);
  emit(j, "", out);
  return kOk;
}

int cmd_fb_certify(const std::string& bank_path, int N, const std::string& constant,
                   std::ostream& out) {
  const auto bank = io::read_bank(bank_path).analysis;
  const int m = fb::degree_bound(bank.size(), bank.downsample(), 2);
  if (N == 0) N = certify_grid_for(bank, 64);
  const auto which = bounds::constant_from_string(constant);
  const auto grid = fb::polyphase_grid(bank, N);
  const auto report = bounds::certify_positive(fb::gram_det_grid(grid), m, which);
  const auto frame = fb::frame_bounds(grid);
  json j = {{"version", version()},
            {"config", {{"command", "fb-certify"}, {"bank", bank_path}, {"N", N}, {"constant", constant}}},
            {"m", m},
            {"kappa", number(report.kappa)},
            {"threshold", number(which == bounds::Constant::kSharp ? report.threshold_sharp
                                                                   : report.threshold_simple)},
            {"certified", report.certified_positive},
            {"frame_bounds", {{"lower", number(frame.lower)}, {"upper", number(frame.upper)}}},
            {"report", report_json(report)}};
  emit(j, "", out);
  return report.certified_positive ? kOk : kNotCertified;
}

int cmd_fb_apply(const std::string& bank_path, const std::string& image_path,
                 const std::string& out_path, int N, std::ostream& out) {
  const auto file = io::read_bank(bank_path);
  const fb::Image image = io::read_pgm(image_path);
  int maxval = 255;
  for (double v : image.pixels) {
    if (v > 255.0) maxval = 65535;
  }
  std::string synthesis_kind = "file";
  fb::FilterBank synthesis(1, 1, 1);
  if (file.synthesis) {
    synthesis = *file.synthesis;
  } else {
    const int s = file.analysis.downsample();
    if (N == 0) N = (std::max(image.rows, image.cols) + s - 1) / s;
    synthesis = fb::min_norm_synthesis(file.analysis, N);
    synthesis_kind = "min_norm";
  }
  const auto result = fb::apply(file.analysis, synthesis, image);
  if (!out_path.empty()) io::write_pgm(out_path, result.reconstruction, maxval);
  json config = {{"command", "fb-apply"}, {"bank", bank_path}, {"image", image_path},
                 {"out", out_path}, {"synthesis", synthesis_kind}};
  if (synthesis_kind == "min_norm") config["N"] = N;
  json j = {{"version", version()}, {"config", config}, {"psnr_db", number(result.psnr_db)}};
  emit(j, "", out);
  return kOk;
}

int cmd_sample(const std::string& poly, int N, const std::string& out_path, std::ostream& out) {
  const auto grid = sample_uniform(io::read_poly(poly), N);
  if (out_path.empty()) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s.precision(17);
    s << "# dim=" << grid.dim() << " N=" << grid.grid_size() << "\n";
    for (const auto& v : grid.values()) s << v.real() << "," << v.imag() << "\n";
    out << s.str();
  } else {
    io::write_grid(out_path, grid);
  }
  return kOk;
}

int cmd_test_image(int rows, int cols, int bits, const std::string& out_path) {
  auto img = fb::test_image(rows, cols);
  if (bits == 16) {
    for (double& v : img.pixels) v *= 257.0;
  }
  io::write_pgm(out_path, img, bits == 16 ? 65535 : 255);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sample-based bounds for trigonometric polynomials and filter-bank certificates",
               "trigbound"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  PolyInput bound_in;
  std::string bound_out;
  auto* bound = app.add_subcommand("bound", "bound the extrema of a polynomial from samples");
  add_poly_input(bound, bound_in);
  bound->add_option("--out", bound_out, "write the JSON report here instead of stdout");

  PolyInput cert_in;
  auto* certify = app.add_subcommand("certify", "certify strict positivity (exit 0 iff certified)");
  add_poly_input(certify, cert_in);

  int fig_n = 8;
  int fig_d = 1;
  std::string fig_ratios = "1.05:8:0.05";
  std::string fig_out;
  auto* fig = app.add_subcommand("fig-opnorm", "tabulate bound constants against N/2n as CSV");
  fig->add_option("--n", fig_n, "component degree")->check(CLI::PositiveNumber)->capture_default_str();
  fig->add_option("--d", fig_d, "dimension")->check(CLI::PositiveNumber)->capture_default_str();
  fig->add_option("--ratios", fig_ratios, "start:stop:step over N/2n")->capture_default_str();
  fig->add_option("--out", fig_out, "CSV path (stdout if omitted)");

  std::string toe_gen;
  int toe_N = 0;
  std::string toe_constant = "sharp";
  std::string toe_out;
  auto* toe = app.add_subcommand("toeplitz-eig", "enclose the eigenvalues of a Toeplitz/BTTB matrix");
  toe->add_option("--gen", toe_gen, "generator JSON")->required()->check(CLI::ExistingFile);
  toe->add_option("--N", toe_N, "samples per axis of the symbol")->required()->check(CLI::PositiveNumber);
  toe->add_option("--constant", toe_constant, "bound constant")
      ->check(CLI::IsMember({"sharp", "simple"}))
      ->capture_default_str();
  toe->add_option("--out", toe_out, "write the JSON here instead of stdout");

  std::string des_spec;
  std::string des_out;
  std::optional<int> des_synth;
  int des_check = 128;
  auto* des = app.add_subcommand("fb-design", "design an analysis bank (optionally with FIR synthesis)");
  des->add_option("--spec", des_spec, "design spec JSON")->required()->check(CLI::ExistingFile);
  des->add_option("--out", des_out, "bank JSON to write")->required();
  des->add_option("--synth-size", des_synth, "co-design FIR synthesis taps of this size")
      ->check(CLI::PositiveNumber);
  des->add_option("--check-grid", des_check, "grid for the synthesis residual")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string fc_bank;
  int fc_N = 0;
  std::string fc_constant = "sharp";
  auto* fc = app.add_subcommand("fb-certify", "certify perfect reconstruction (exit 0 iff certified)");
  fc->add_option("--bank", fc_bank, "bank JSON")->required()->check(CLI::ExistingFile);
  fc->add_option("--N", fc_N, "grid size (default max(64, 2m+1))")->check(CLI::PositiveNumber);
  fc->add_option("--constant", fc_constant, "bound constant")
      ->check(CLI::IsMember({"sharp", "simple"}))
      ->capture_default_str();

  std::string fa_bank;
  std::string fa_image;
  std::string fa_out;
  int fa_N = 0;
  auto* fa = app.add_subcommand("fb-apply", "analyse and reconstruct a PGM image, print PSNR");
  fa->add_option("--bank", fa_bank, "bank JSON")->required()->check(CLI::ExistingFile);
  fa->add_option("--image", fa_image, "input PGM")->required()->check(CLI::ExistingFile);
  fa->add_option("--out", fa_out, "reconstruction PGM");
  fa->add_option("--N", fa_N, "grid for min-norm synthesis when the bank has none "
                              "(default: image side / s)")
      ->check(CLI::PositiveNumber);

  std::string smp_poly;
  int smp_N = 0;
  std::string smp_out;
  auto* smp = app.add_subcommand("sample", "sample a polynomial on the uniform grid as CSV");
  smp->add_option("--poly", smp_poly, "TrigPoly JSON")->required()->check(CLI::ExistingFile);
  smp->add_option("--N", smp_N, "samples per axis")->required()->check(CLI::PositiveNumber);
  smp->add_option("--out", smp_out, "CSV path (stdout if omitted)");

  int img_rows = 512;
  int img_cols = 512;
  int img_bits = 8;
  std::string img_out;
  auto* img = app.add_subcommand("test-image", "write the deterministic test pattern as PGM");
  img->add_option("--rows", img_rows, "image rows")->check(CLI::PositiveNumber)->capture_default_str();
  img->add_option("--cols", img_cols, "image columns")->check(CLI::PositiveNumber)->capture_default_str();
  img->add_option("--bits", img_bits, "bit depth")->check(CLI::IsMember({8, 16}))->capture_default_str();
  img->add_option("--out", img_out, "PGM path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kUsage;
  }

  try {
    if (bound->parsed()) return cmd_bound(bound_in, bound_out, out);
    if (certify->parsed()) return cmd_certify(cert_in, out);
    if (fig->parsed()) return cmd_fig_opnorm(fig_n, fig_ratios, fig_d, fig_out, out);
    if (toe->parsed()) return cmd_toeplitz(toe_gen, toe_N, toe_constant, toe_out, out);
    if (des->parsed()) return cmd_fb_design(des_spec, des_out, des_synth, des_check, out);
    if (fc->parsed()) return cmd_fb_certify(fc_bank, fc_N, fc_constant, out);
    if (fa->parsed()) return cmd_fb_apply(fa_bank, fa_image, fa_out, fa_N, out);
    if (smp->parsed()) return cmd_sample(smp_poly, smp_N, smp_out, out);
    if (img->parsed()) return cmd_test_image(img_rows, img_cols, img_bits, img_out);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::logic_error& e) {
    // ArgumentError and PreconditionError
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
  err << app.help();
  return kUsage;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace trigbound::cli
