#pragma once

// Decisions about degenerate cases of the renormalization event, shared by
// the strip scan and the exhaustive oracle so that the two cannot drift.
//
//  - Cluster size is the number of sites, in both site and bond mode.
//  - "Unique largest" needs exactly one cluster of the maximal size; a tie is
//    a failure of the event.
//  - A half with no open site (site mode) has no largest cluster and fails.
//  - The halves' largest clusters are joined only through the rectangle; a
//    largest cluster that never reaches the interface strip cannot be joined.
//  - An interface bond is usable in bond mode when it is open; in site mode
//    when both its end sites are open.

#include <cstdint>

namespace pcert {

class LargestTracker {
public:
    void offer(std::int64_t size)
    {
        if (size <= 0) return;
        if (size > size_) {
            size_ = size;
            count_ = 1;
        } else if (size == size_) {
            ++count_;
        }
    }

    std::int64_t size() const { return size_; }
    bool unique() const { return size_ > 0 && count_ == 1; }

private:
    std::int64_t size_ = 0;
    int count_ = 0;
};

inline bool event_holds(bool left_unique, bool right_unique, bool joined)
{
    return left_unique && right_unique && joined;
}

}  // namespace pcert
