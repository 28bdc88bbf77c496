#include "tristrat/scheduler.hpp"

#include "tristrat/errors.hpp"

#include <deque>
#include <map>
#include <stdexcept>

namespace tristrat {
namespace {

constexpr std::uint64_t kMaxTableEntries = 50'000'000;

enum Phase : char { Idle = 'i', Waiting = 'w', Owner = 'o' };

// Indices into the sorted alphabet {release, request, stay}.
constexpr ActionId kRelease = 0;
constexpr ActionId kRequest = 1;
constexpr ActionId kStay = 2;

const std::string kBoot = "boot";

std::string step(const std::string& cfg, ActionId arbiter, const std::vector<ActionId>& procs)
{
    std::string next = cfg;
    bool owned = cfg.find(Owner) != std::string::npos;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        if (cfg[i] == Idle && procs[i] == kRequest)
            next[i] = Waiting;
        else if (cfg[i] == Owner && procs[i] == kRelease)
            next[i] = Idle;
    }
    if (!owned && arbiter != kStay) {
        auto pick = arbiter == kRequest ? cfg.find(Waiting) : cfg.rfind(Waiting);
        if (pick != std::string::npos)
            next[pick] = Owner;
    }
    return next;
}

} // namespace

std::string_view to_string(SchedulerPartition p)
{
    return p == SchedulerPartition::WaitingCluster ? "waiting-cluster" : "atom-agreement";
}

SchedulerPartition parse_scheduler_partition(std::string_view name)
{
    if (name == "waiting-cluster")
        return SchedulerPartition::WaitingCluster;
    if (name == "atom-agreement")
        return SchedulerPartition::AtomAgreement;
    throw std::invalid_argument("unknown scheduler partition '" + std::string(name) + "'");
}

Formula scheduler_property(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("scheduler needs at least two processes");
    std::optional<Formula> safe;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            Formula c = Formula::disj(Formula::neg_atom("rs" + std::to_string(i)),
                                      Formula::neg_atom("rs" + std::to_string(j)));
            safe = safe ? Formula::conj(*safe, c) : c;
        }
    Formula f = Formula::globally(*safe);
    for (std::size_t i = n; i >= 1; --i)
        f = Formula::bind("P" + std::to_string(i), "y" + std::to_string(i), f);
    f = Formula::bind("Arbiter", "x", f);
    for (std::size_t i = n; i >= 1; --i)
        f = Formula::forall("y" + std::to_string(i), f);
    return Formula::forall("x", f);
}

Scheduler gen_scheduler(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("scheduler needs at least two processes");

    ConcreteCgs::Indexed d;
    d.agents.push_back("Arbiter");
    for (std::size_t i = 1; i <= n; ++i)
        d.agents.push_back("P" + std::to_string(i));
    d.actions = {"release", "request", "stay"};
    for (std::size_t i = 1; i <= n; ++i)
        d.atoms.push_back("rs" + std::to_string(i));

    ProfileCodec codec(d.agents.size(), d.actions.size());

    // Breadth-first exploration from boot; a configuration is one phase
    // letter per process.
    std::map<std::string, StateId> index;
    std::deque<std::string> queue;
    auto visit = [&](const std::string& cfg) {
        auto [it, fresh] = index.emplace(cfg, static_cast<StateId>(d.states.size()));
        if (fresh) {
            d.states.push_back(cfg);
            queue.push_back(cfg);
        }
        return it->second;
    };
    visit(kBoot);
    std::vector<std::vector<StateId>> rows;
    std::vector<ActionId> procs(n);
    while (!queue.empty()) {
        std::string cfg = queue.front();
        queue.pop_front();
        if (static_cast<std::uint64_t>(d.states.size()) * codec.count() > kMaxTableEntries)
            throw TooLarge("scheduler with " + std::to_string(n) + " processes is too large");
        std::vector<StateId> row(codec.count());
        for (ProfileId p = 0; p < codec.count(); ++p) {
            if (cfg == kBoot) {
                row[p] = visit(std::string(n, Idle));
                continue;
            }
            auto digits = codec.decode(p);
            for (std::size_t i = 0; i < n; ++i)
                procs[i] = digits[i + 1];
            row[p] = visit(step(cfg, digits[0], procs));
        }
        rows.push_back(std::move(row));
    }
    d.initial = 0;
    for (auto& row : rows)
        d.transition.insert(d.transition.end(), row.begin(), row.end());
    d.label.assign(d.states.size() * n, false);
    for (std::size_t s = 0; s < d.states.size(); ++s)
        if (d.states[s] != kBoot)
            for (std::size_t i = 0; i < n; ++i)
                d.label[s * n + i] = d.states[s][i] == Owner;

    Scheduler out{ConcreteCgs::from_indexed(std::move(d)), {}, {}, scheduler_property(n)};

    std::map<std::pair<int, bool>, std::size_t> key_to_class;
    std::vector<std::size_t> cls(out.model.num_states());
    for (StateId s = 0; s < out.model.num_states(); ++s) {
        const std::string& cfg = out.model.states()[s];
        std::pair<int, bool> key{-2, false};
        if (cfg != kBoot) {
            auto owner = cfg.find(Owner);
            key = {owner == std::string::npos ? -1 : static_cast<int>(owner),
                   cfg.find(Waiting) != std::string::npos};
        }
        cls[s] = key_to_class.emplace(key, key_to_class.size()).first->second;
    }
    out.waiting_cluster = Partition::from_classes(out.model, cls);
    out.atom_agreement = partition_by_atoms(out.model, std::set<std::string>(out.model.atoms().begin(),
                                                                             out.model.atoms().end()));
    return out;
}

} // namespace tristrat
