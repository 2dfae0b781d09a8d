#include "trigbound/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "trigbound/errors.hpp"
#include "trigbound/tiling.hpp"

namespace trigbound::io {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ArgumentError(what + ": invalid JSON: " + e.what());
  }
}

template <typename T>
T get(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw ArgumentError(what + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ArgumentError(what + ": bad value for '" + key + "'");
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& what) {
  return j.contains(key) ? get<T>(j, key, what) : fallback;
}

TrigPoly poly_from(const json& j, const std::string& what) {
  const int dim = get<int>(j, "dim", what);
  const int degree = get<int>(j, "degree", what);
  const auto re = get<std::vector<double>>(j, "coeffs_real", what);
  const auto im = get_or<std::vector<double>>(j, "coeffs_imag", {}, what);
  if (!im.empty() && im.size() != re.size()) {
    throw ArgumentError(what + ": coeffs_real and coeffs_imag differ in length");
  }
  std::vector<Complex> c(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) c[i] = {re[i], im.empty() ? 0.0 : im[i]};
  try {
    return TrigPoly(dim, degree, std::move(c));
  } catch (const ArgumentError& e) {
    throw ArgumentError(what + ": " + e.what());
  }
}

json filters_json(const fb::FilterBank& bank) {
  json filters = json::array();
  for (int c = 0; c < bank.channels(); ++c) {
    const auto f = bank.filter(c);
    filters.push_back(std::vector<double>(f.begin(), f.end()));
  }
  return filters;
}

fb::FilterBank bank_from(const json& j, int channels, int s, int origin,
                         const std::string& what) {
  const int size = get<int>(j, "size", what);
  const auto filters = get<std::vector<std::vector<double>>>(j, "filters", what);
  if (static_cast<int>(filters.size()) != channels) {
    throw ArgumentError(what + ": expected " + std::to_string(channels) + " filters");
  }
  std::vector<double> taps;
  for (const auto& f : filters) {
    if (f.size() != static_cast<std::size_t>(size) * size) {
      throw ArgumentError(what + ": filter length must be size^2");
    }
    taps.insert(taps.end(), f.begin(), f.end());
  }
  return fb::FilterBank(channels, size, s, std::move(taps), origin);
}

std::vector<double> read_plane_csv(const fs::path& path, int N) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path.string());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(N) * N);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    row.imbue(std::locale::classic());
    std::string cell;
    while (std::getline(row, cell, ',')) {
      std::istringstream cs(cell);
      cs.imbue(std::locale::classic());
      double v = 0.0;
      if (!(cs >> v)) throw ArgumentError(path.string() + ": bad number '" + cell + "'");
      out.push_back(v);
    }
  }
  if (out.size() != static_cast<std::size_t>(N) * N) {
    throw ArgumentError(path.string() + ": expected " + std::to_string(N) + "x" +
                        std::to_string(N) + " values");
  }
  return out;
}

std::vector<double> planes_from_csv(const json& list, const fs::path& base, int channels, int N,
                                    const std::string& what) {
  const auto paths = list.get<std::vector<std::string>>();
  if (static_cast<int>(paths.size()) != channels) {
    throw ArgumentError(what + ": expected one CSV per channel");
  }
  std::vector<double> out;
  for (const auto& p : paths) {
    fs::path full = p;
    if (full.is_relative()) full = base / full;
    const auto plane = read_plane_csv(full, N);
    out.insert(out.end(), plane.begin(), plane.end());
  }
  return out;
}

}  // namespace

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path.string());
  out << text;
  if (!out) throw ArgumentError("write failed: " + path.string());
}

TrigPoly poly_from_json(const std::string& text) {
  return poly_from(parse(text, "polynomial"), "polynomial");
}

std::string poly_to_json(const TrigPoly& p) {
  std::vector<double> re;
  std::vector<double> im;
  for (const auto& c : p.coeffs()) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  json j = {{"dim", p.dim()}, {"degree", p.degree()}, {"coeffs_real", re}, {"coeffs_imag", im}};
  return j.dump(2) + "\n";
}

TrigPoly read_poly(const fs::path& path) {
  return poly_from(parse(read_text(path), path.string()), path.string());
}

void write_poly(const fs::path& path, const TrigPoly& p) { write_text(path, poly_to_json(p)); }

toeplitz::ToeplitzSpec read_toeplitz(const fs::path& path) {
  const std::string what = path.string();
  const json j = parse(read_text(path), what);
  const auto kind = get_or<std::string>(j, "kind", "toeplitz", what);
  if (kind != "toeplitz") throw ArgumentError(what + ": kind must be \"toeplitz\"");
  return toeplitz::ToeplitzSpec(poly_from(j, what), get_or<int>(j, "order", 0, what));
}

SampleGrid read_grid(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  int dim = 0;
  int N = 0;
  if (std::sscanf(header.c_str(), "# dim=%d N=%d", &dim, &N) != 2 || dim < 1 || N < 1) {
    throw ArgumentError(path.string() + ": header must be '# dim=d N=N'");
  }
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(N);
  std::vector<Complex> values;
  values.reserve(total);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    row.imbue(std::locale::classic());
    double re = 0.0;
    double im = 0.0;
    char comma = 0;
    if (!(row >> re)) throw ArgumentError(path.string() + ": bad line '" + line + "'");
    if (row >> comma) {
      if (comma != ',' || !(row >> im)) {
        throw ArgumentError(path.string() + ": bad line '" + line + "'");
      }
    }
    values.emplace_back(re, im);
  }
  if (values.size() != total) {
    throw ArgumentError(path.string() + ": expected " + std::to_string(total) + " values, got " +
                        std::to_string(values.size()));
  }
  return SampleGrid(dim, N, std::move(values));
}

void write_grid(const fs::path& path, const SampleGrid& grid) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(17);
  out << "# dim=" << grid.dim() << " N=" << grid.grid_size() << "\n";
  for (const auto& v : grid.values()) out << v.real() << "," << v.imag() << "\n";
  write_text(path, out.str());
}

BankFile bank_from_json(const std::string& text) {
  const std::string what = "bank";
  const json j = parse(text, what);
  const int channels = get<int>(j, "channels", what);
  const int s = get<int>(j, "s", what);
  BankFile out{bank_from(j, channels, s, 0, what), std::nullopt};
  if (j.contains("synthesis") && !j.at("synthesis").is_null()) {
    const json& g = j.at("synthesis");
    out.synthesis = bank_from(g, channels, s, get_or<int>(g, "origin", 0, what), what + ".synthesis");
  }
  return out;
}

std::string bank_to_json(const fb::FilterBank& analysis, const fb::FilterBank* synthesis) {
  json j = {{"channels", analysis.channels()},
            {"size", analysis.size()},
            {"s", analysis.downsample()},
            {"filters", filters_json(analysis)}};
  if (synthesis != nullptr) {
    j["synthesis"] = {{"size", synthesis->size()},
                      {"origin", synthesis->origin()},
                      {"filters", filters_json(*synthesis)}};
  }
  return j.dump(1) + "\n";
}

BankFile read_bank(const fs::path& path) {
  try {
    return bank_from_json(read_text(path));
  } catch (const ArgumentError& e) {
    throw ArgumentError(path.string() + ": " + e.what());
  }
}

void write_bank(const fs::path& path, const fb::FilterBank& analysis,
                const fb::FilterBank* synthesis) {
  write_text(path, bank_to_json(analysis, synthesis));
}

DesignFile design_from_json(const std::string& text, const fs::path& base_dir) {
  const std::string what = "design spec";
  const json j = parse(text, what);
  DesignFile out;
  auto& spec = out.spec;
  spec.channels = get<int>(j, "channels", what);
  spec.size = get<int>(j, "size", what);
  spec.s = get<int>(j, "s", what);
  spec.grid_size = get_or<int>(j, "N", spec.grid_size, what);
  spec.alpha = get_or<double>(j, "alpha", spec.alpha, what);
  spec.beta = get_or<double>(j, "beta", spec.beta, what);
  spec.gamma = get_or<double>(j, "gamma", spec.gamma, what);
  spec.iters = get_or<int>(j, "iters", spec.iters, what);
  spec.learning_rate = get_or<double>(j, "lr", spec.learning_rate, what);
  spec.seed = get_or<std::uint64_t>(j, "seed", 0, what);
  spec.init = fb::init_from_string(get_or<std::string>(j, "init", "random", what));
  spec.init_scale = get_or<double>(j, "init_scale", 0.0, what);
  spec.penalty_scale = get_or<double>(j, "penalty_scale", 1.0, what);
  if (j.contains("synth_size")) out.synth_size = get<int>(j, "synth_size", what);

  const int N = spec.grid_size;
  if (N < 1 || spec.channels < 1) throw ArgumentError(what + ": bad channels or N");
  const std::size_t plane = static_cast<std::size_t>(N) * N;
  if (!j.contains("desired")) {
    out.desired_source = "none";
    spec.desired.assign(plane * spec.channels, 0.0);
    spec.weights.assign(plane * spec.channels, 0.0);
  } else {
    const json& d = j.at("desired");
    if (d.contains("tiling")) {
      const auto name = get<std::string>(d, "tiling", what);
      if (name != "wedge") throw ArgumentError(what + ": unknown tiling '" + name + "'");
      const double total = get_or<double>(d, "total", fb::barrier_matched_total(spec.s, spec.beta, spec.gamma), what);
      spec.desired = fb::wedge_tiling(spec.channels, N, total);
      out.desired_source = "tiling:" + name;
    } else if (d.contains("csv")) {
      spec.desired = planes_from_csv(d.at("csv"), base_dir, spec.channels, N, what);
      out.desired_source = "csv";
    } else {
      throw ArgumentError(what + ": desired needs 'tiling' or 'csv'");
    }
    if (!j.contains("weights")) {
      spec.weights.assign(plane * spec.channels, 1.0);
    } else if (j.at("weights").is_number()) {
      spec.weights.assign(plane * spec.channels, j.at("weights").get<double>());
    } else if (j.at("weights").contains("csv")) {
      spec.weights = planes_from_csv(j.at("weights").at("csv"), base_dir, spec.channels, N, what);
    } else {
      throw ArgumentError(what + ": weights must be a number or {\"csv\": [...]}");
    }
  }
  spec.validate();
  return out;
}

DesignFile read_design(const fs::path& path) {
  try {
    return design_from_json(read_text(path), path.parent_path());
  } catch (const ArgumentError& e) {
    throw ArgumentError(path.string() + ": " + e.what());
  }
}

namespace {

// Next whitespace-separated header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  int ch = 0;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

}  // namespace

fb::Image read_pgm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open " + path.string());
  const std::string bad = path.string() + ": not a binary PGM";
  if (pgm_token(in) != "P5") throw ArgumentError(bad);
  int cols = 0;
  int rows = 0;
  int maxval = 0;
  try {
    cols = std::stoi(pgm_token(in));
    rows = std::stoi(pgm_token(in));
    maxval = std::stoi(pgm_token(in));
  } catch (const std::exception&) {
    throw ArgumentError(bad);
  }
  if (cols < 1 || rows < 1 || maxval < 1 || maxval > 65535) throw ArgumentError(bad);
  const int bytes = maxval < 256 ? 1 : 2;
  std::vector<unsigned char> raw(static_cast<std::size_t>(rows) * cols * bytes);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
    throw ArgumentError(path.string() + ": truncated pixel data");
  }
  fb::Image img(rows, cols);
  for (std::size_t k = 0; k < img.pixels.size(); ++k) {
    img.pixels[k] = bytes == 1 ? raw[k] : (raw[2 * k] << 8) | raw[2 * k + 1];
  }
  return img;
}

void write_pgm(const fs::path& path, const fb::Image& image, int maxval) {
  if (maxval != 255 && maxval != 65535) throw ArgumentError("write_pgm: maxval must be 255 or 65535");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path.string());
  out << "P5\n" << image.cols << " " << image.rows << "\n" << maxval << "\n";
  std::vector<unsigned char> raw;
  raw.reserve(image.pixels.size() * (maxval > 255 ? 2 : 1));
  for (double v : image.pixels) {
    const auto q = static_cast<unsigned>(std::clamp(std::round(v), 0.0, static_cast<double>(maxval)));
    if (maxval > 255) raw.push_back(static_cast<unsigned char>(q >> 8));
    raw.push_back(static_cast<unsigned char>(q & 0xff));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw ArgumentError("write failed: " + path.string());
}

}  // namespace trigbound::io
