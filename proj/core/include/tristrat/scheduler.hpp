#pragma once

// Parametric scheduler benchmark: n processes compete for one resource
// handed out by an arbiter.
//
// Every agent shares the alphabet {stay, request, release}. A process is
// idle, waiting or owner: request moves idle to waiting, release moves owner
// to idle, anything else leaves it unchanged. When nobody owns the resource
// the arbiter grants it to the lowest-index waiting process on request, to
// the highest-index one on release, and to nobody on stay. A dedicated boot
// state leads to the all-idle configuration. Atom rs_i holds iff P_i owns
// the resource.

#include "tristrat/abstraction.hpp"
#include "tristrat/formula.hpp"
#include "tristrat/model.hpp"

#include <string>
#include <string_view>

namespace tristrat {

enum class SchedulerPartition : unsigned char {
    /// Boot alone; other states keyed by (owner or none, some process waiting).
    WaitingCluster,
    /// States agreeing on every rs_i.
    AtomAgreement,
};

std::string_view to_string(SchedulerPartition p);
/// Throws std::invalid_argument.
SchedulerPartition parse_scheduler_partition(std::string_view name);

struct Scheduler {
    ConcreteCgs model;
    Partition waiting_cluster;
    Partition atom_agreement;
    /// Mutual exclusion under every strategy profile.
    Formula property;

    const Partition& partition(SchedulerPartition which) const
    {
        return which == SchedulerPartition::WaitingCluster ? waiting_cluster : atom_agreement;
    }
};

/// Throws std::invalid_argument for n < 2 and TooLarge when the transition
/// table would not fit.
Scheduler gen_scheduler(std::size_t n);

/// A x A y1 .. A yn (Arbiter,x)(P1,y1)..(Pn,yn) G !(some two rs_i hold).
Formula scheduler_property(std::size_t n);

} // namespace tristrat
