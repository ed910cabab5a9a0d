#include "trirec/sequence.hpp"

#include <array>

namespace trirec {

namespace {

struct PresetRow {
    PresetKind kind;
    std::string_view name;
};

constexpr std::array<PresetRow, 9> kPresetRows{{
    {PresetKind::tribonacci, "tribonacci"},
    {PresetKind::tribonacci_lucas, "tribonacci-lucas"},
    {PresetKind::padovan, "padovan"},
    {PresetKind::perrin, "perrin"},
    {PresetKind::generalized_tribonacci, "generalized-tribonacci"},
    {PresetKind::generalized_padovan, "generalized-padovan"},
    {PresetKind::u, "u"},
    {PresetKind::v, "v"},
    {PresetKind::z, "z"},
}};

}  // namespace

std::string_view basis_name(Basis kind) {
    switch (kind) {
        case Basis::u: return "u";
        case Basis::v: return "v";
        case Basis::z: return "z";
    }
    return "?";
}

std::optional<Basis> parse_basis(std::string_view name) {
    if (name == "u") return Basis::u;
    if (name == "v") return Basis::v;
    if (name == "z") return Basis::z;
    return std::nullopt;
}

ModParams to_mod_params(const RationalParams& p, const ModRing& ring) {
    return make_params(ring.from_rational(p.a), ring.from_rational(p.b), ring.from_rational(p.c),
                       ring.from_rational(p.r), ring.from_rational(p.s), ring.from_rational(p.t));
}

RationalParams make_rational_params(const Rational& a, const Rational& b, const Rational& c,
                                    const Rational& r, const Rational& s, const Rational& t) {
    return make_params(a, b, c, r, s, t);
}

std::string_view preset_name(PresetKind kind) {
    for (const auto& row : kPresetRows) {
        if (row.kind == kind) return row.name;
    }
    return "?";
}

std::optional<PresetKind> parse_preset_kind(std::string_view name) {
    for (const auto& row : kPresetRows) {
        if (row.name == name) return row.kind;
    }
    return std::nullopt;
}

RationalParams preset_params(const Preset& preset) {
    switch (preset.kind) {
        case PresetKind::tribonacci: return make_rational_params(0, 1, 1, 1, 1, 1);
        case PresetKind::tribonacci_lucas: return make_rational_params(3, 1, 3, 1, 1, 1);
        case PresetKind::padovan: return make_rational_params(1, 1, 1, 0, 1, 1);
        case PresetKind::perrin: return make_rational_params(3, 0, 2, 0, 1, 1);
        case PresetKind::generalized_tribonacci:
            return make_rational_params(preset.a, preset.b, preset.c, 1, 1, 1);
        case PresetKind::generalized_padovan:
            return make_rational_params(preset.a, preset.b, preset.c, 0, 1, 1);
        case PresetKind::u: return basis_params(Basis::u, preset.r, preset.s, preset.t);
        case PresetKind::v: return basis_params(Basis::v, preset.r, preset.s, preset.t);
        case PresetKind::z: return basis_params(Basis::z, preset.r, preset.s, preset.t);
    }
    return make_rational_params(0, 1, 1, 1, 1, 1);
}

}  // namespace trirec
