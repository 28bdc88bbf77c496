#include "tristrat/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace tristrat {
namespace {

nlohmann::json abstraction_json(const AbstractionReport& a)
{
    return nlohmann::json::parse(to_json(a));
}

std::string fmt_seconds(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", s);
    return buf;
}

double reduction(std::size_t concrete, std::size_t abstract)
{
    if (concrete == 0)
        return 0;
    return 1.0 - static_cast<double>(abstract) / static_cast<double>(concrete);
}

} // namespace

std::string to_json(const RunReport& r)
{
    nlohmann::json j = {
        {"verdict", std::string(to_string(r.verdict))},
        {"engine", r.engine},
        {"formula", r.formula},
        {"model", r.model_source},
        {"timings", {{"abstraction", r.abstraction_seconds}, {"verification", r.verification_seconds}}},
        {"strategies", r.strategies},
        {"shortcut", r.shortcut},
    };
    if (r.abstraction)
        j["abstraction"] = abstraction_json(*r.abstraction);
    return j.dump(2);
}

std::string to_text(const RunReport& r)
{
    std::ostringstream os;
    auto row = [&](const char* key, const std::string& value) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%-22s", key);
        os << buf << value << '\n';
    };
    row("verdict", std::string(to_string(r.verdict)));
    row("engine", r.engine);
    row("model", r.model_source);
    row("formula", r.formula);
    row("abstraction time [s]", fmt_seconds(r.abstraction_seconds));
    row("verification time [s]", fmt_seconds(r.verification_seconds));
    row("strategies", std::to_string(r.strategies) + (r.shortcut ? " (shortcut)" : ""));
    if (r.abstraction) {
        const auto& a = *r.abstraction;
        row("concrete states", std::to_string(a.concrete_states));
        row("concrete transitions", std::to_string(a.concrete_transitions));
        row("abstract states", std::to_string(a.abstract_states));
        row("may transitions", std::to_string(a.may_transitions));
        row("must transitions", std::to_string(a.must_transitions));
        std::string acts;
        for (const auto& s : a.must_actions)
            acts += (acts.empty() ? "" : ",") + s;
        row("must actions", "{" + acts + "}" + (a.heuristic ? " (greedy)" : ""));
    }
    return os.str();
}

double CompressionRow::state_reduction() const { return reduction(concrete_states, abstract_states); }

double CompressionRow::transition_reduction() const
{
    return reduction(concrete_transitions, abstract_transitions);
}

std::string compression_json(const std::vector<CompressionRow>& rows)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({
            {"n", r.n},
            {"concrete_states", r.concrete_states},
            {"concrete_transitions", r.concrete_transitions},
            {"abstract_states", r.abstract_states},
            {"abstract_transitions", r.abstract_transitions},
            {"state_reduction", r.state_reduction()},
            {"transition_reduction", r.transition_reduction()},
            {"abstraction_seconds", r.abstraction_seconds},
            {"verification_seconds", r.verification_seconds},
            {"verdict", std::string(to_string(r.verdict))},
        });
    return arr.dump(2);
}

std::string compression_text(const std::vector<CompressionRow>& rows)
{
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%3s %10s %12s %8s %10s %8s %8s %10s %10s %8s\n", "n", "states", "transitions",
                  "abs st", "abs tr", "st red%", "tr red%", "abs [s]", "ver [s]", "verdict");
    os << buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%3zu %10zu %12zu %8zu %10zu %8.2f %8.2f %10.3f %10.3f %8s\n", r.n,
                      r.concrete_states, r.concrete_transitions, r.abstract_states, r.abstract_transitions,
                      100 * r.state_reduction(), 100 * r.transition_reduction(), r.abstraction_seconds,
                      r.verification_seconds, std::string(to_string(r.verdict)).c_str());
        os << buf;
    }
    return os.str();
}

} // namespace tristrat
