#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace ambigal {

// The 23 indecomposable Z_2[C_8]-lattices, followed by the two decomposable
// aliases I = R2 + GR2 and M = R2 + R1 + R0 used in the tables.
enum class Mod : unsigned char {
  R0, R1, R2, R3, GR2, G, H, L,
  G1, G2, G3, G4, H1, H2, I1, I2, L1, L2, L3, M1,
  H12, H1G, H1L,
  I, M,
};

inline constexpr int kIndecomposables = 23;
inline constexpr int kModCount = 25;

struct ModInfo {
  Mod id;
  std::string_view name;
  std::string_view script;  // calligraphic name, unicode
  int rank;
  std::array<int, 4> chars;  // multiplicities of R0, R1, R2, R3
  bool alias;
};

inline constexpr std::array<ModInfo, kModCount> kModInfo = {{
    {Mod::R0, "R0", "ℛ₀", 1, {1, 0, 0, 0}, false},
    {Mod::R1, "R1", "ℛ₁", 1, {0, 1, 0, 0}, false},
    {Mod::R2, "R2", "ℛ₂", 2, {0, 0, 1, 0}, false},
    {Mod::R3, "R3", "ℛ₃", 4, {0, 0, 0, 1}, false},
    {Mod::GR2, "GR2", "ℛ₁→1∈ℛ₀", 2, {1, 1, 0, 0}, false},
    {Mod::G, "G", "𝒢", 4, {1, 1, 1, 0}, false},
    {Mod::H, "H", "ℋ", 4, {1, 1, 1, 0}, false},
    {Mod::L, "L", "ℒ", 4, {1, 1, 1, 0}, false},
    {Mod::G1, "G1", "𝒢₁", 8, {1, 1, 1, 1}, false},
    {Mod::G2, "G2", "𝒢₂", 8, {1, 1, 1, 1}, false},
    {Mod::G3, "G3", "𝒢₃", 8, {1, 1, 1, 1}, false},
    {Mod::G4, "G4", "𝒢₄", 8, {1, 1, 1, 1}, false},
    {Mod::H1, "H1", "ℋ₁", 8, {1, 1, 1, 1}, false},
    {Mod::H2, "H2", "ℋ₂", 8, {1, 1, 1, 1}, false},
    {Mod::I1, "I1", "ℐ₁", 8, {1, 1, 1, 1}, false},
    {Mod::I2, "I2", "ℐ₂", 8, {1, 1, 1, 1}, false},
    {Mod::L1, "L1", "ℒ₁", 8, {1, 1, 1, 1}, false},
    {Mod::L2, "L2", "ℒ₂", 8, {1, 1, 1, 1}, false},
    {Mod::L3, "L3", "ℒ₃", 8, {1, 1, 1, 1}, false},
    {Mod::M1, "M1", "ℳ₁", 8, {1, 1, 1, 1}, false},
    {Mod::H12, "H12", "ℋ₁,₂", 12, {1, 1, 1, 2}, false},
    {Mod::H1G, "H1G", "ℋ₁𝒢", 12, {2, 2, 2, 1}, false},
    {Mod::H1L, "H1L", "ℋ₁ℒ", 12, {2, 2, 2, 1}, false},
    {Mod::I, "I", "ℐ", 4, {1, 1, 1, 0}, true},
    {Mod::M, "M", "ℳ", 4, {1, 1, 1, 0}, true},
}};

inline const ModInfo& info(Mod m) { return kModInfo[static_cast<std::size_t>(m)]; }
inline std::string_view name(Mod m) { return info(m).name; }
inline int rank(Mod m) { return info(m).rank; }

inline std::optional<Mod> mod_from_name(std::string_view s) {
  for (auto& mi : kModInfo)
    if (mi.name == s) return mi.id;
  return std::nullopt;
}

inline constexpr std::array<Mod, kIndecomposables> all_indecomposables() {
  std::array<Mod, kIndecomposables> out{};
  for (int k = 0; k < kIndecomposables; ++k) out[k] = static_cast<Mod>(k);
  return out;
}

}  // namespace ambigal
