#pragma once

#include <string>

#include "psical/field.hpp"
#include "psical/quantize.hpp"
#include "psical/stft.hpp"

namespace psical {

// Binary field format "GSF1": magic bytes GSF1, then little-endian
//   u32 dim,
//   per axis { f64 center, f64 halfwidth, u32 count, u8 role },
//   interleaved f64 (re, im) pairs, row-major ascending coordinate.
void write_gsf1(const std::string& path, const Field& f);
Field read_gsf1(const std::string& path);

// Binary operator matrix format "GSM1": magic bytes GSM1, then little-endian
//   u32 rows, u32 cols,
//   target grid then source grid, each as { u32 dim, per axis { f64 center,
//   f64 halfwidth, u32 count, u8 role } },
//   rows*cols interleaved f64 (re, im) pairs, row-major.
void write_gsm1(const std::string& path, const OperatorMatrix& m);
OperatorMatrix read_gsm1(const std::string& path);

// STFT data: values as GSF1 plus a JSON sidecar naming the window file and
// carrying window_l2.
void write_stft(const std::string& values_path, const std::string& window_path,
                const std::string& sidecar_path, const StftData& v);
StftData read_stft(const std::string& sidecar_path);

}  // namespace psical
