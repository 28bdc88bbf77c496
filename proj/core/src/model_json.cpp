// JSON reader/writer for the "tristrat-cgs/1" model schema.

#include "tristrat/errors.hpp"
#include "tristrat/model.hpp"

#include <json.hpp>

#include <set>

namespace tristrat {

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& doc, const char* key, bool required = true)
{
    if (!doc.contains(key)) {
        if (required)
            throw ParseError(std::string("missing key '") + key + "'");
        return {};
    }
    const json& v = doc.at(key);
    if (!v.is_array())
        throw ParseError(std::string("'") + key + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string())
            throw ParseError(std::string("'") + key + "' must be an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& key, const char* what)
{
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == key)
            return i;
    throw ValidationError(std::string("unknown ") + what + " '" + key + "'");
}

struct Skeleton {
    std::vector<std::string> agents, states, actions, atoms;
    StateId initial = 0;
    ProfileCodec codec;
};

// Profile given either as an array in agent order or as {agent: action}.
ProfileId read_profile(const json& entry, const Skeleton& sk)
{
    if (!entry.contains("action_profile"))
        throw ParseError("transition entry without 'action_profile'");
    const json& prof = entry.at("action_profile");
    std::vector<ActionId> digits(sk.agents.size());
    if (prof.is_array()) {
        if (prof.size() != sk.agents.size())
            throw ValidationError("action profile must name one action per agent");
        for (std::size_t i = 0; i < prof.size(); ++i) {
            if (!prof[i].is_string())
                throw ParseError("action names must be strings");
            digits[i] = static_cast<ActionId>(index_of(sk.actions, prof[i].get<std::string>(), "action"));
        }
    } else if (prof.is_object()) {
        if (prof.size() != sk.agents.size())
            throw ValidationError("action profile must name one action per agent");
        for (std::size_t i = 0; i < sk.agents.size(); ++i) {
            if (!prof.contains(sk.agents[i]) || !prof.at(sk.agents[i]).is_string())
                throw ValidationError("action profile misses agent '" + sk.agents[i] + "'");
            digits[i] = static_cast<ActionId>(
                index_of(sk.actions, prof.at(sk.agents[i]).get<std::string>(), "action"));
        }
    } else {
        throw ParseError("'action_profile' must be an array or an object");
    }
    return sk.codec.encode(digits);
}

std::vector<StateId> read_states(const json& entry, const char* key, const Skeleton& sk, bool required)
{
    if (!entry.contains(key)) {
        if (required)
            throw ParseError(std::string("transition entry without '") + key + "'");
        return {};
    }
    std::vector<StateId> out;
    for (const auto& s : entry.at(key)) {
        if (!s.is_string())
            throw ParseError("state names must be strings");
        out.push_back(static_cast<StateId>(index_of(sk.states, s.get<std::string>(), "state")));
    }
    return out;
}

Truth read_truth(const json& v)
{
    if (v.is_boolean())
        return from_bool(v.get<bool>());
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "true")
            return Truth::True;
        if (s == "false")
            return Truth::False;
        if (s == "undef")
            return Truth::Undef;
    }
    throw ParseError("label values must be \"true\", \"false\" or \"undef\"");
}

Skeleton read_skeleton(const json& doc, const char* actions_key)
{
    Skeleton sk;
    sk.agents = string_list(doc, "agents");
    sk.states = string_list(doc, "states");
    sk.actions = string_list(doc, actions_key);
    if (!doc.contains("initial") || !doc.at("initial").is_string())
        throw ParseError("missing string key 'initial'");
    if (sk.agents.empty() || sk.states.empty() || sk.actions.empty())
        throw ValidationError("agents, states and actions must be nonempty");
    sk.initial = static_cast<StateId>(index_of(sk.states, doc.at("initial").get<std::string>(), "state"));
    sk.codec = ProfileCodec(sk.agents.size(), sk.actions.size());

    if (doc.contains("atoms")) {
        sk.atoms = string_list(doc, "atoms");
    } else if (doc.contains("labels") && doc.at("labels").is_object()) {
        std::set<std::string> atoms;
        for (const auto& [state, row] : doc.at("labels").items())
            if (row.is_object())
                for (const auto& [atom, value] : row.items())
                    atoms.insert(atom);
        sk.atoms.assign(atoms.begin(), atoms.end());
    }
    return sk;
}

template <typename T, typename Read>
std::vector<T> read_labels(const json& doc, const Skeleton& sk, Read read)
{
    std::vector<T> label(sk.states.size() * sk.atoms.size());
    std::vector<bool> seen(label.size(), false);
    if (!sk.atoms.empty() && !doc.contains("labels"))
        throw ValidationError("label not total: missing 'labels'");
    if (doc.contains("labels")) {
        if (!doc.at("labels").is_object())
            throw ParseError("'labels' must be an object");
        for (const auto& [state, row] : doc.at("labels").items()) {
            const auto s = index_of(sk.states, state, "state");
            if (!row.is_object())
                throw ParseError("label rows must be objects");
            for (const auto& [atom, value] : row.items()) {
                const auto a = index_of(sk.atoms, atom, "atom");
                label[s * sk.atoms.size() + a] = read(value);
                seen[s * sk.atoms.size() + a] = true;
            }
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw ValidationError("label not total: state '" + sk.states[i / sk.atoms.size()] +
                                  "' has no value for atom '" + sk.atoms[i % sk.atoms.size()] + "'");
    return label;
}

const json& transitions_of(const json& doc)
{
    if (!doc.contains("transitions") || !doc.at("transitions").is_array())
        throw ParseError("missing array 'transitions'");
    return doc.at("transitions");
}

ConcreteCgs concrete_from_json(const json& doc)
{
    Skeleton sk = read_skeleton(doc, "actions");
    const ProfileId P = sk.codec.count();
    constexpr StateId kMissing = static_cast<StateId>(-1);
    std::vector<StateId> transition(sk.states.size() * P, kMissing);
    for (const auto& e : transitions_of(doc)) {
        if (!e.contains("state") || !e.at("state").is_string())
            throw ParseError("transition entry without 'state'");
        const auto s = index_of(sk.states, e.at("state").get<std::string>(), "state");
        const auto p = read_profile(e, sk);
        auto succ = read_states(e, "successors", sk, true);
        if (succ.size() != 1)
            throw ValidationError("transition not deterministic: state '" + sk.states[s] +
                                  "' needs exactly one successor per joint action");
        auto& slot = transition[s * P + p];
        if (slot != kMissing && slot != succ.front())
            throw ValidationError("transition not deterministic: two successors for one joint action at '" +
                                  sk.states[s] + "'");
        slot = succ.front();
    }
    for (std::size_t i = 0; i < transition.size(); ++i)
        if (transition[i] == kMissing)
            throw ValidationError("transition not total: state '" + sk.states[i / P] + "' misses a joint action");

    auto label = read_labels<bool>(doc, sk, [](const json& v) {
        const Truth t = read_truth(v);
        if (t == Truth::Undef)
            throw ValidationError("concrete models cannot carry \"undef\" labels");
        return t == Truth::True;
    });
    std::vector<bool> bits(label.begin(), label.end());

    ConcreteCgs::Indexed d{std::move(sk.agents), std::move(sk.states), sk.initial, std::move(sk.actions),
                           std::move(sk.atoms), std::move(transition), std::move(bits)};
    return ConcreteCgs::from_indexed(std::move(d));
}

ThreeCgs three_from_json(const json& doc)
{
    Skeleton sk = read_skeleton(doc, "actions_may");
    auto must_actions = string_list(doc, "actions_must", false);
    const ProfileId P = sk.codec.count();
    std::vector<std::vector<StateId>> may(sk.states.size() * P), must(sk.states.size() * P);
    for (const auto& e : transitions_of(doc)) {
        if (!e.contains("state") || !e.at("state").is_string())
            throw ParseError("transition entry without 'state'");
        const auto s = index_of(sk.states, e.at("state").get<std::string>(), "state");
        const auto p = read_profile(e, sk);
        auto m = read_states(e, "may", sk, true);
        auto u = read_states(e, "must", sk, false);
        may[s * P + p].insert(may[s * P + p].end(), m.begin(), m.end());
        must[s * P + p].insert(must[s * P + p].end(), u.begin(), u.end());
    }
    auto label = read_labels<Truth>(doc, sk, read_truth);
    ThreeCgs::Indexed d{std::move(sk.agents), std::move(sk.states), sk.initial, std::move(sk.actions),
                        std::move(must_actions), std::move(sk.atoms), std::move(may), std::move(must),
                        std::move(label)};
    return ThreeCgs::from_indexed(std::move(d));
}

json parse_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("model document must be a JSON object");
    if (doc.contains("schema") && doc.at("schema") != std::string(kSchemaVersion))
        throw ParseError("unsupported schema '" + doc.at("schema").dump() + "'");
    return doc;
}

json profile_json(const std::vector<std::string>& actions, const std::vector<ActionId>& digits)
{
    json p = json::array();
    for (auto d : digits)
        p.push_back(actions[d]);
    return p;
}

json names_json(const std::vector<std::string>& states, const std::vector<StateId>& ids)
{
    json out = json::array();
    for (auto s : ids)
        out.push_back(states[s]);
    return out;
}

} // namespace

ModelDocument load_document(std::string_view text)
{
    const json doc = parse_json(text);
    std::string kind = "concrete";
    if (doc.contains("kind")) {
        if (!doc.at("kind").is_string())
            throw ParseError("'kind' must be a string");
        kind = doc.at("kind").get<std::string>();
    }
    ModelDocument out{ConcreteCgs{}, std::nullopt};
    try {
        if (kind == "concrete")
            out.model = concrete_from_json(doc);
        else if (kind == "three")
            out.model = three_from_json(doc);
        else
            throw ParseError("unknown model kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed model: ") + e.what());
    }
    if (doc.contains("partition")) {
        const json& part = doc.at("partition");
        if (!part.is_array())
            throw ParseError("'partition' must be an array of arrays of state names");
        std::vector<std::vector<std::string>> blocks;
        for (const auto& b : part) {
            if (!b.is_array())
                throw ParseError("'partition' must be an array of arrays of state names");
            auto& block = blocks.emplace_back();
            for (const auto& s : b) {
                if (!s.is_string())
                    throw ParseError("partition members must be state names");
                block.push_back(s.get<std::string>());
            }
        }
        out.partition = std::move(blocks);
    }
    return out;
}

ConcreteCgs load_concrete(std::string_view text)
{
    auto doc = load_document(text);
    if (auto* g = std::get_if<ConcreteCgs>(&doc.model))
        return std::move(*g);
    throw ValidationError("expected a concrete model");
}

ThreeCgs load_three(std::string_view text)
{
    auto doc = load_document(text);
    if (auto* g = std::get_if<ThreeCgs>(&doc.model))
        return std::move(*g);
    throw ValidationError("expected a three-valued model");
}

std::string save(const ConcreteCgs& g, const std::optional<std::vector<std::vector<std::string>>>& partition)
{
    json doc;
    doc["schema"] = kSchemaVersion;
    doc["kind"] = "concrete";
    doc["agents"] = g.agents();
    doc["states"] = g.states();
    doc["initial"] = g.states()[g.initial()];
    doc["actions"] = g.actions();
    doc["atoms"] = g.atoms();
    json trans = json::array();
    for (StateId s = 0; s < g.num_states(); ++s)
        for (ProfileId p = 0; p < g.profiles().count(); ++p)
            trans.push_back({{"state", g.states()[s]},
                             {"action_profile", profile_json(g.actions(), g.profiles().decode(p))},
                             {"successors", json::array({g.states()[g.successor(s, p)]})}});
    doc["transitions"] = std::move(trans);
    json labels = json::object();
    for (StateId s = 0; s < g.num_states(); ++s) {
        json row = json::object();
        for (std::size_t a = 0; a < g.atoms().size(); ++a)
            row[g.atoms()[a]] = g.label(s, a) ? "true" : "false";
        labels[g.states()[s]] = std::move(row);
    }
    doc["labels"] = std::move(labels);
    if (partition)
        doc["partition"] = *partition;
    return doc.dump(1);
}

std::string save(const ThreeCgs& g)
{
    json doc;
    doc["schema"] = kSchemaVersion;
    doc["kind"] = "three";
    doc["agents"] = g.agents();
    doc["states"] = g.states();
    doc["initial"] = g.states()[g.initial()];
    doc["actions_may"] = g.actions_may();
    doc["actions_must"] = g.actions_must();
    doc["atoms"] = g.atoms();
    json trans = json::array();
    for (StateId s = 0; s < g.num_states(); ++s)
        for (ProfileId p = 0; p < g.profiles().count(); ++p) {
            json e = {{"state", g.states()[s]},
                      {"action_profile", profile_json(g.actions_may(), g.profiles().decode(p))},
                      {"may", names_json(g.states(), g.successors(s, p, Mode::May))}};
            const auto& must = g.successors(s, p, Mode::Must);
            if (!must.empty())
                e["must"] = names_json(g.states(), must);
            trans.push_back(std::move(e));
        }
    doc["transitions"] = std::move(trans);
    json labels = json::object();
    for (StateId s = 0; s < g.num_states(); ++s) {
        json row = json::object();
        for (std::size_t a = 0; a < g.atoms().size(); ++a)
            row[g.atoms()[a]] = std::string(to_string(g.label(s, a)));
        labels[g.states()[s]] = std::move(row);
    }
    doc["labels"] = std::move(labels);
    return doc.dump(1);
}

} // namespace tristrat
