#ifndef BOLDWALK_STATS_TYPES_HPP
#define BOLDWALK_STATS_TYPES_HPP

namespace boldwalk::stats {

// A point estimate together with its standard error.
struct MeanSe {
    double value;
    double se;
};

} // namespace boldwalk::stats

#endif // BOLDWALK_STATS_TYPES_HPP
