#ifndef ADKDE_PARTITION_HPP
#define ADKDE_PARTITION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adkde {

//! Coordinate subset of {0..d-1} as a bitmask; bit i = coordinate i.
using IndexSet = std::uint32_t;

int set_size(IndexSet s);
int lowest_index(IndexSet s);
IndexSet full_set(int d);
std::vector<int> set_indices(IndexSet s);

//! Coordinates of x at the indices of I, ascending.
std::vector<double> project(const std::vector<double>& x, IndexSet I);

//! Partition of {0..d-1} into disjoint nonempty blocks. Canonical form:
//! blocks sorted by smallest element, which makes equality structural and
//! gives partitions a total order for deterministic tie-breaking.
class Partition {
public:
    Partition(int d, std::vector<IndexSet> blocks);
    static Partition one_block(int d);
    static Partition singletons(int d);

    int dimension() const { return d_; }
    const std::vector<IndexSet>& blocks() const { return blocks_; }
    IndexSet block_containing(int i) const;
    int max_block_size() const;

    //! Every block of *this is contained in some block of coarser.
    bool refines(const Partition& coarser) const;

    bool operator==(const Partition& o) const {
        return d_ == o.d_ && blocks_ == o.blocks_;
    }

private:
    int d_;
    std::vector<IndexSet> blocks_;
};

//! P∘Q: all nonempty pairwise block intersections (common refinement).
Partition compose(const Partition& p, const Partition& q);

//! Total order: compare canonical block sequences lexicographically,
//! each block as its ascending index list. Singletons sort before coarser
//! partitions sharing a prefix.
bool partition_less(const Partition& a, const Partition& b);

//! All set partitions of {0..d-1} in canonical order. With d0_cap: the
//! one-block partition plus every partition whose blocks all have size
//! <= d0_cap. Guarded at d <= 8.
std::vector<Partition> enumerate_partitions(int d, std::optional<int> d0_cap = std::nullopt);

//! Text round-trip, 1-based, blocks separated by '|': "1,2|3,4".
Partition parse_partition(std::string_view text, int d);
std::string format_partition(const Partition& p);

std::string format_index_set(IndexSet I);

} // namespace adkde

#endif
