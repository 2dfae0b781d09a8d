#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "trigbound/design.hpp"
#include "trigbound/filter_bank.hpp"
#include "trigbound/reconstruction.hpp"
#include "trigbound/toeplitz.hpp"
#include "trigbound/trig_poly.hpp"

// File formats used by the command line tool. Every reader throws
// ArgumentError with the offending path on malformed input.
namespace trigbound::io {

// {"dim": d, "degree": n, "coeffs_real": [...], "coeffs_imag": [...]};
// coeffs_imag may be omitted for real coefficients.
TrigPoly poly_from_json(const std::string& text);
std::string poly_to_json(const TrigPoly& p);
TrigPoly read_poly(const std::filesystem::path& path);
void write_poly(const std::filesystem::path& path, const TrigPoly& p);

// Same layout plus "kind": "toeplitz" and an optional matrix "order".
toeplitz::ToeplitzSpec read_toeplitz(const std::filesystem::path& path);

// "# dim=d N=N" then one "re,im" line per grid point, row-major.
SampleGrid read_grid(const std::filesystem::path& path);
void write_grid(const std::filesystem::path& path, const SampleGrid& grid);

struct BankFile {
  fb::FilterBank analysis;
  std::optional<fb::FilterBank> synthesis;
};

// {"channels", "size", "s", "filters": [[...] per channel],
//  "synthesis": {"size", "origin", "filters"} (optional)}
BankFile bank_from_json(const std::string& text);
std::string bank_to_json(const fb::FilterBank& analysis,
                         const fb::FilterBank* synthesis = nullptr);
BankFile read_bank(const std::filesystem::path& path);
void write_bank(const std::filesystem::path& path, const fb::FilterBank& analysis,
                const fb::FilterBank* synthesis = nullptr);

struct DesignFile {
  fb::DesignSpec spec;
  std::optional<int> synth_size;
  std::string desired_source;  // "tiling:<name>" or "csv"
};

// Design problem description. Keys: channels, size, s, N, alpha, beta,
// gamma, iters, lr, seed, init ("idft"|"random"), init_scale, penalty_scale,
// desired ({"tiling": "wedge", "total": t} or {"csv": [paths]}; total defaults to
// barrier_matched_total),
// weights (number, or {"csv": [paths]}; default 1), synth_size.
// CSV paths are resolved relative to the spec file; each holds N rows of N
// comma-separated values.
DesignFile design_from_json(const std::string& text,
                            const std::filesystem::path& base_dir = {});
DesignFile read_design(const std::filesystem::path& path);

// Binary PGM (P5), 8 or 16 bit. Pixel values are kept in the file's scale.
fb::Image read_pgm(const std::filesystem::path& path);
// Values are rounded and clamped to [0, maxval]; maxval 255 or 65535.
void write_pgm(const std::filesystem::path& path, const fb::Image& image, int maxval = 255);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace trigbound::io
