#pragma once

#include <cstdint>

namespace xlsxdiag {

// English Metric Units: the integer length unit used throughout DrawingML.
using Emu = std::int64_t;
// Typographic points, used for all emitted geometry.
using Pt = double;

inline constexpr Emu kEmuPerInch = 914400;
inline constexpr Emu kEmuPerPoint = 12700;
inline constexpr Emu kEmuPerPixel = 9525; // at 96 DPI
inline constexpr int kDefaultMaxDigitWidthPx = 7; // Calibri 11

// Rotation is stored in 1/60000 degree units, normalized to [0, 21600000).
inline constexpr std::int64_t kAngleFull = 21600000;
inline constexpr std::int64_t kAnglePerDegree = 60000;

inline Pt emu_to_pt(Emu v) { return static_cast<Pt>(v) / static_cast<Pt>(kEmuPerPoint); }
inline Emu pt_to_emu(Pt v) { return static_cast<Emu>(v * static_cast<Pt>(kEmuPerPoint) + (v >= 0 ? 0.5 : -0.5)); }

inline std::int64_t normalize_angle(std::int64_t rot) {
    rot %= kAngleFull;
    if (rot < 0)
        rot += kAngleFull;
    return rot;
}

} // namespace xlsxdiag
