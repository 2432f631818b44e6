#pragma once

#include <optional>
#include <string_view>

namespace macbench {

/// Channel-access techniques covered by the workbench. The analytic module
/// maps csma_1p and csma_ca onto the same closed-form CSMA family; the
/// simulator distinguishes them.
enum class Technique {
    pure_aloha,
    slotted_aloha,
    csma_1p,
    csma_ca,
    tdma,
    fdma,
};

/// Curve relations: delay vs offered load, throughput vs offered load,
/// delay vs throughput.
enum class Relation {
    d_vs_g,
    t_vs_g,
    d_vs_t,
};

inline constexpr Technique kAllTechniques[] = {
    Technique::pure_aloha, Technique::slotted_aloha, Technique::csma_1p,
    Technique::csma_ca,    Technique::tdma,          Technique::fdma,
};

const char* technique_name(Technique t);
const char* relation_name(Relation r);

/// Accepts both snake_case and kebab-case spellings ("pure_aloha", "pure-aloha").
std::optional<Technique> technique_from_name(std::string_view name);
std::optional<Relation> relation_from_name(std::string_view name);

}  // namespace macbench
