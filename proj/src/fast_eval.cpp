#include "trirec/fast_eval.hpp"

namespace trirec {

std::string_view negative_kind_name(NegativeKind kind) {
    switch (kind) {
        case NegativeKind::u: return "u";
        case NegativeKind::v: return "v";
        case NegativeKind::w_simple: return "w-simple";
        case NegativeKind::w_ratio: return "w-ratio";
    }
    return "?";
}

std::optional<NegativeKind> parse_negative_kind(std::string_view name) {
    for (auto kind : {NegativeKind::u, NegativeKind::v, NegativeKind::w_simple, NegativeKind::w_ratio}) {
        if (negative_kind_name(kind) == name) return kind;
    }
    return std::nullopt;
}

}  // namespace trirec
