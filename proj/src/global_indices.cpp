#include "linkhide/global_indices.hpp"

namespace linkhide {

namespace {
constexpr std::array<std::string_view, 7> kNames = {"katz", "lhng",    "act", "cos",
                                                    "rwr",  "simrank", "mfi"};
}

std::string_view name(GlobalIndexKind kind) { return kNames[std::size_t(kind)]; }

std::optional<GlobalIndexKind> parse_global_index(std::string_view text) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == text)
            return GlobalIndexKind(i);
    return std::nullopt;
}

void GlobalParams::validate() const {
    if (!(katz_beta_rule > 0.0 && katz_beta_rule < 1.0))
        throw std::invalid_argument("katz_beta_rule must lie in (0,1) so that beta < 1/lambda*");
    if (!(lhn_phi > 0.0 && lhn_phi < 1.0))
        throw std::invalid_argument("lhn_phi must lie in (0,1)");
    if (!(rwr_return > 0.0 && rwr_return < 1.0))
        throw std::invalid_argument("rwr_return must lie in (0,1)");
    if (!(simrank_decay > 0.0 && simrank_decay < 1.0))
        throw std::invalid_argument("simrank_decay must lie in (0,1)");
    if (simrank_max_iters <= 0 || eigen_max_iters <= 0)
        throw std::invalid_argument("iteration limits must be positive");
    if (!(simrank_tolerance > 0.0) || !(eigen_tolerance > 0.0))
        throw std::invalid_argument("tolerances must be positive");
}

}  // namespace linkhide
