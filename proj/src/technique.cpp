#include "technique.hpp"

#include <string>

namespace macbench {

const char* technique_name(Technique t) {
    switch (t) {
        case Technique::pure_aloha: return "pure_aloha";
        case Technique::slotted_aloha: return "slotted_aloha";
        case Technique::csma_1p: return "csma_1p";
        case Technique::csma_ca: return "csma_ca";
        case Technique::tdma: return "tdma";
        case Technique::fdma: return "fdma";
    }
    return "unknown";
}

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::d_vs_g: return "d-vs-g";
        case Relation::t_vs_g: return "t-vs-g";
        case Relation::d_vs_t: return "d-vs-t";
    }
    return "unknown";
}

namespace {
std::string normalized(std::string_view name) {
    std::string s(name);
    for (char& c : s) {
        if (c == '-') c = '_';
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return s;
}
}  // namespace

std::optional<Technique> technique_from_name(std::string_view name) {
    const std::string s = normalized(name);
    for (Technique t : kAllTechniques)
        if (s == technique_name(t)) return t;
    return std::nullopt;
}

std::optional<Relation> relation_from_name(std::string_view name) {
    const std::string s = normalized(name);
    for (Relation r : {Relation::d_vs_g, Relation::t_vs_g, Relation::d_vs_t})
        if (s == normalized(relation_name(r))) return r;
    return std::nullopt;
}

}  // namespace macbench
