#pragma once

#include "sumrange/core/basis.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace sumrange {

/// Which construction block emitted an index. `kind` points at a static
/// string literal.
struct BlockTag {
    const char* kind = "identity";
    std::uint64_t number = 0;
};

struct Emission {
    Index index = 0;
    BlockTag block;
};

class ScheduleSource {
public:
    virtual ~ScheduleSource() = default;
    virtual Emission next() = 0;
    /// The source's own claim: every index <= the returned value has been
    /// emitted so far. Verified independently by check_bijection_prefix.
    virtual Index claimed_prefix() const = 0;
    virtual std::string name() const = 0;
};

/// Lazily emitted bijection of the positive integers. Single consumer;
/// move-only.
class PermutationSchedule {
public:
    explicit PermutationSchedule(std::unique_ptr<ScheduleSource> source, std::optional<Index> prefix_hint = {});

    Emission next();
    Index claimed_prefix() const { return source_->claimed_prefix(); }
    std::uint64_t emitted() const { return emitted_; }
    std::optional<Index> prefix_hint() const { return hint_; }
    std::string name() const { return source_->name(); }

    std::vector<Emission> take(std::size_t n);

private:
    std::unique_ptr<ScheduleSource> source_;
    std::optional<Index> hint_;
    std::uint64_t emitted_ = 0;
};

/// Tracks the largest K with {1..K} all marked.
class CoverageCursor {
public:
    void mark(Index k);
    bool seen(Index k) const { return k <= frontier_ || pending_.count(k) > 0; }
    Index frontier() const { return frontier_; }

private:
    Index frontier_ = 0;
    std::unordered_set<Index> pending_;
};

PermutationSchedule identity_schedule();
/// Emits the given list, then throws Exhausted. The claim is computed from
/// the list itself.
PermutationSchedule list_schedule(std::vector<Index> indices, std::string name = "list");

} // namespace sumrange
