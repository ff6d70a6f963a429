#include "sumrange/core/schedule.hpp"

#include "sumrange/core/error.hpp"

namespace sumrange {

PermutationSchedule::PermutationSchedule(std::unique_ptr<ScheduleSource> source, std::optional<Index> prefix_hint)
    : source_(std::move(source)), hint_(prefix_hint) {
    if (!source_) {
        throw Error(ErrorCode::InvalidArgument, "schedule needs a source");
    }
}

Emission PermutationSchedule::next() {
    Emission e = source_->next();
    ++emitted_;
    return e;
}

std::vector<Emission> PermutationSchedule::take(std::size_t n) {
    std::vector<Emission> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(next());
    }
    return out;
}

void CoverageCursor::mark(Index k) {
    if (k <= frontier_) {
        return;
    }
    if (k != frontier_ + 1) {
        pending_.insert(k);
        return;
    }
    frontier_ = k;
    while (!pending_.empty()) {
        auto it = pending_.find(frontier_ + 1);
        if (it == pending_.end()) {
            break;
        }
        pending_.erase(it);
        ++frontier_;
    }
}

namespace {

class IdentitySource final : public ScheduleSource {
public:
    Emission next() override { return {++last_, {"identity", 0}}; }
    Index claimed_prefix() const override { return last_; }
    std::string name() const override { return "identity"; }

private:
    Index last_ = 0;
};

class ListSource final : public ScheduleSource {
public:
    ListSource(std::vector<Index> list, std::string name) : list_(std::move(list)), name_(std::move(name)) {}

    Emission next() override {
        if (pos_ >= list_.size()) {
            throw Error(ErrorCode::Exhausted, "list schedule '" + name_ + "' has no more indices");
        }
        Index k = list_[pos_++];
        cover_.mark(k);
        return {k, {"list", 0}};
    }
    Index claimed_prefix() const override { return cover_.frontier(); }
    std::string name() const override { return name_; }

private:
    std::vector<Index> list_;
    std::string name_;
    std::size_t pos_ = 0;
    CoverageCursor cover_;
};

} // namespace

PermutationSchedule identity_schedule() { return PermutationSchedule(std::make_unique<IdentitySource>()); }

PermutationSchedule list_schedule(std::vector<Index> indices, std::string name) {
    return PermutationSchedule(std::make_unique<ListSource>(std::move(indices), std::move(name)));
}

} // namespace sumrange
