#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "seeds/core_types.hpp"
#include "seeds/rng.hpp"

namespace seeds::test {

inline SubjectRecord unlabeled_record(std::string id, double left, double right, std::vector<double> xstar = {},
                                      std::vector<CensorCode> dstar = {}, std::vector<double> z = {},
                                      std::vector<double> events = {})
{
    SubjectRecord r;
    r.id = std::move(id);
    r.left = left;
    r.right = right;
    r.surrogate_times = std::move(xstar);
    r.surrogate_statuses = std::move(dstar);
    r.baseline = std::move(z);
    r.process_events = std::move(events);
    return r;
}

inline SubjectRecord labeled_record(std::string id, double left, double right, double x, CensorCode status,
                                    std::vector<double> xstar = {}, std::vector<CensorCode> dstar = {},
                                    std::vector<double> z = {}, std::vector<double> events = {})
{
    SubjectRecord r = unlabeled_record(std::move(id), left, right, std::move(xstar), std::move(dstar), std::move(z),
                                       std::move(events));
    r.observed_time = x;
    r.status = status;
    return r;
}

// Labeled record from a latent event time, window and one exact-or-censored
// surrogate.
inline SubjectRecord from_latent(std::string id, double t, double left, double right, double s)
{
    return labeled_record(std::move(id), left, right, censor_time(t, left, right), classify(t, left, right),
                          {censor_time(s, left, right)}, {classify(s, left, right)});
}

inline SubjectRecord strip(SubjectRecord r)
{
    r.observed_time.reset();
    r.status.reset();
    return r;
}

} // namespace seeds::test
