#include "clab/validity.hpp"

#include <algorithm>
#include <thread>

#include "clab/errors.hpp"
#include "clab/semantics.hpp"

namespace clab {

void require_bounds_cover(const Formula& f, const Bounds& b) {
  if (max_agent_of(f) > b.max_agents) {
    throw BoundsInsufficientForFormula("formula names agent " + std::to_string(max_agent_of(f)) +
                                       " but bounds allow " + std::to_string(b.max_agents));
  }
  if (modal_depth(f) >= 2 && !b.vary_all_states) {
    throw BoundsInsufficientForFormula(
        "modal depth >= 2 needs outcomes varied at every state (--all-states)");
  }
  for (const auto& p : propositions_of(f)) {
    if (std::find(b.props.begin(), b.props.end(), p) == b.props.end()) {
      throw BoundsInsufficientForFormula("atom '" + p + "' is not among the bounds' propositions");
    }
  }
}

namespace {

struct Hit {
  std::uint64_t index;
  StateIndex state;
};

std::optional<Hit> scan(const Formula& f, const ModelSpace& space, std::uint64_t begin,
                        std::uint64_t end) {
  Evaluator ev(f);
  std::optional<Hit> hit;
  space.for_each(begin, end, [&](std::uint64_t i, const CoalitionModel& m) {
    const auto& row = ev.evaluate(m);
    for (StateIndex s = 0; s < row.size(); ++s) {
      if (!row[s]) {
        hit = Hit{i, s};
        return false;
      }
    }
    return true;
  });
  return hit;
}

}  // namespace

Verdict find_countermodel(const Formula& f, const ModelSpace& space, SearchOptions opts) {
  require_bounds_cover(f, space.bounds());
  const int need = max_agent_of(f);

  // Blocks come in ascending agent order, so the domain is a suffix.
  std::uint64_t begin = space.size();
  std::uint64_t states_checked = 0;
  for (const auto& block : space.blocks()) {
    if (block.shape.agents < need) continue;
    begin = std::min(begin, block.first);
    states_checked += block.count * block.shape.states;
  }
  const std::uint64_t end = space.size();

  std::optional<Hit> hit;
  const unsigned workers = std::max(1u, opts.workers);
  if (workers == 1 || end - begin < 2 * workers) {
    hit = scan(f, space, begin, end);
  } else {
    std::vector<std::optional<Hit>> hits(workers);
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (end - begin + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min(end, begin + w * chunk);
      const std::uint64_t hi = std::min(end, lo + chunk);
      threads.emplace_back([&, w, lo, hi] { hits[w] = scan(f, space, lo, hi); });
    }
    for (auto& t : threads) t.join();
    for (const auto& h : hits) {
      if (h && (!hit || h->index < hit->index)) hit = h;
    }
  }

  if (hit) {
    return Counterexample{space.at(hit->index), hit->state, hit->index, hit->index - begin + 1,
                          std::nullopt};
  }
  return NoCounterexampleWithinBounds{space.bounds(), end - begin, states_checked};
}

Verdict find_countermodel(const Formula& f, const Bounds& b, SearchOptions opts) {
  b.validate();
  require_bounds_cover(f, b);
  return find_countermodel(f, ModelSpace(b), opts);
}

Verdict check_equivalence(const Formula& f, const Formula& g, const Bounds& b,
                          SearchOptions opts) {
  return find_countermodel(Formula::iff(f, g), b, opts);
}

Verdict minimal_countermodel(const Formula& f, const Bounds& b) {
  b.validate();
  require_bounds_cover(f, b);
  const int need = std::max(max_agent_of(f), b.min_agents);
  std::uint64_t models = 0;
  std::uint64_t states = 0;
  for (int s = 1; s <= b.max_states; ++s) {
    for (int a = 1; a <= b.max_actions_per_agent; ++a) {
      for (int n = need; n <= b.max_agents; ++n) {
        const SizeTuple size{static_cast<std::size_t>(s), static_cast<std::size_t>(a), n};
        const ModelSpace space(b, [&](const ModelShape& shape) {
          return shape.states == size.states && shape.max_actions() == size.actions &&
                 shape.agents == n;
        });
        if (space.empty()) continue;
        Verdict v = find_countermodel(f, space);
        if (auto* cx = std::get_if<Counterexample>(&v)) {
          cx->models_checked += models;
          cx->size = size;
          return v;
        }
        const auto& done = std::get<NoCounterexampleWithinBounds>(v);
        models += done.models_checked;
        states += done.states_checked;
      }
    }
  }
  return NoCounterexampleWithinBounds{b, models, states};
}

}  // namespace clab
