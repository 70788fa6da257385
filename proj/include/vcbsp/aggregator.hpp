#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vcbsp/error.hpp"

namespace vcbsp {

// Global reduce: values provided in superstep s are merged at the barrier and
// readable by every vertex in superstep s+1. Accumulators reset to the
// identity each round.
class AggregatorBase {
public:
    virtual ~AggregatorBase() = default;
    virtual std::unique_ptr<AggregatorBase> clone_identity() const = 0;
    virtual void merge_from(const AggregatorBase& other) = 0;
    virtual void reset() = 0;
};

template <typename T>
class Aggregator final : public AggregatorBase {
public:
    using Merge = std::function<T(const T&, const T&)>;

    Aggregator(T identity, Merge merge)
        : identity_(identity), acc_(std::move(identity)), merge_(std::move(merge)) {}

    void add(const T& v) { acc_ = merge_(acc_, v); }
    const T& get() const { return acc_; }

    std::unique_ptr<AggregatorBase> clone_identity() const override {
        return std::make_unique<Aggregator<T>>(identity_, merge_);
    }
    void merge_from(const AggregatorBase& other) override {
        acc_ = merge_(acc_, static_cast<const Aggregator<T>&>(other).acc_);
    }
    void reset() override { acc_ = identity_; }

private:
    T identity_;
    T acc_;
    Merge merge_;
};

// Named set of aggregator prototypes; programs register theirs before the run.
class AggregatorRegistry {
public:
    template <typename T>
    void add(const std::string& name, T identity, typename Aggregator<T>::Merge merge) {
        for (const auto& [n, _] : defs_)
            if (n == name) throw Error("aggregator '" + name + "' registered twice");
        defs_.emplace_back(name, std::make_unique<Aggregator<T>>(std::move(identity), std::move(merge)));
    }

    const std::vector<std::pair<std::string, std::unique_ptr<AggregatorBase>>>& defs() const {
        return defs_;
    }

private:
    std::vector<std::pair<std::string, std::unique_ptr<AggregatorBase>>> defs_;
};

namespace agg {
inline Aggregator<bool>::Merge land() {
    return [](const bool& a, const bool& b) { return a && b; };
}
inline Aggregator<bool>::Merge lor() {
    return [](const bool& a, const bool& b) { return a || b; };
}
template <typename T>
typename Aggregator<T>::Merge sum() {
    return [](const T& a, const T& b) { return a + b; };
}
}  // namespace agg

}  // namespace vcbsp
