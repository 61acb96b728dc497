#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nvxbar {

/// Base for every domain error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

#define NVXBAR_DEFINE_ERROR(Name)                                              \
    class Name : public Error                                                  \
    {                                                                          \
    public:                                                                    \
        using Error::Error;                                                    \
    }

// techmodel / crossbar
NVXBAR_DEFINE_ERROR(OutOfActiveRegion);
NVXBAR_DEFINE_ERROR(StateForbidden);
NVXBAR_DEFINE_ERROR(IndexOutOfRange);
NVXBAR_DEFINE_ERROR(IllegalConfig);
NVXBAR_DEFINE_ERROR(DimensionTooSmall);
NVXBAR_DEFINE_ERROR(CountExceedsCapacity);
NVXBAR_DEFINE_ERROR(InvalidSpec);

// workload
NVXBAR_DEFINE_ERROR(ParseError);
NVXBAR_DEFINE_ERROR(ValidationError);
NVXBAR_DEFINE_ERROR(NonPositiveWeight);
NVXBAR_DEFINE_ERROR(InvalidParams);

// mapper
NVXBAR_DEFINE_ERROR(CapacityExceeded);

// simulate
NVXBAR_DEFINE_ERROR(TooFewSpikes);
NVXBAR_DEFINE_ERROR(EmptyPlacement);
NVXBAR_DEFINE_ERROR(EmptyCounts);
NVXBAR_DEFINE_ERROR(NegativeActivity);
NVXBAR_DEFINE_ERROR(UnknownNeuron);

// dse
NVXBAR_DEFINE_ERROR(InvalidGrid);
NVXBAR_DEFINE_ERROR(NoFeasibleKnee);

#undef NVXBAR_DEFINE_ERROR

/// Raised when a cluster cannot be placed without violating region rules
/// or the crossbar dimension.
class Infeasible : public Error
{
public:
    Infeasible(int cluster_id, std::vector<std::string> violations);

    int cluster_id() const noexcept { return cluster_id_; }
    const std::vector<std::string> &violations() const noexcept
    {
        return violations_;
    }

private:
    int cluster_id_;
    std::vector<std::string> violations_;
};

} // namespace nvxbar
