#include "adkde/partition.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

namespace adkde {

int set_size(IndexSet s) { return std::popcount(s); }

int lowest_index(IndexSet s) {
    if (s == 0) throw std::invalid_argument("empty index set");
    return std::countr_zero(s);
}

IndexSet full_set(int d) {
    if (d < 1 || d > 31) throw std::invalid_argument("dimension out of range");
    return (IndexSet{1} << d) - 1;
}

std::vector<int> set_indices(IndexSet s) {
    std::vector<int> out;
    out.reserve(set_size(s));
    for (IndexSet m = s; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

std::vector<double> project(const std::vector<double>& x, IndexSet I) {
    std::vector<double> out;
    out.reserve(set_size(I));
    for (int i : set_indices(I)) {
        if (i >= static_cast<int>(x.size()))
            throw std::invalid_argument("index set exceeds point dimension");
        out.push_back(x[static_cast<size_t>(i)]);
    }
    return out;
}

Partition::Partition(int d, std::vector<IndexSet> blocks)
    : d_(d), blocks_(std::move(blocks)) {
    if (d < 1) throw std::invalid_argument("partition dimension must be positive");
    IndexSet seen = 0;
    for (IndexSet b : blocks_) {
        if (b == 0) throw std::invalid_argument("partition block is empty");
        if (b & seen) throw std::invalid_argument("partition blocks overlap");
        seen |= b;
    }
    if (seen != full_set(d))
        throw std::invalid_argument("partition blocks do not cover {1..d}");
    std::sort(blocks_.begin(), blocks_.end(),
              [](IndexSet a, IndexSet b) { return lowest_index(a) < lowest_index(b); });
}

Partition Partition::one_block(int d) { return Partition(d, {full_set(d)}); }

Partition Partition::singletons(int d) {
    std::vector<IndexSet> b;
    for (int i = 0; i < d; ++i) b.push_back(IndexSet{1} << i);
    return Partition(d, std::move(b));
}

IndexSet Partition::block_containing(int i) const {
    if (i < 0 || i >= d_) throw std::invalid_argument("coordinate out of range");
    for (IndexSet b : blocks_)
        if (b & (IndexSet{1} << i)) return b;
    throw std::logic_error("partition invariant violated");
}

int Partition::max_block_size() const {
    int m = 0;
    for (IndexSet b : blocks_) m = std::max(m, set_size(b));
    return m;
}

bool Partition::refines(const Partition& coarser) const {
    if (d_ != coarser.d_) return false;
    for (IndexSet b : blocks_) {
        IndexSet host = coarser.block_containing(lowest_index(b));
        if ((b & ~host) != 0) return false;
    }
    return true;
}

Partition compose(const Partition& p, const Partition& q) {
    if (p.dimension() != q.dimension())
        throw std::invalid_argument("compose: partition dimensions differ");
    std::vector<IndexSet> out;
    for (IndexSet a : p.blocks())
        for (IndexSet b : q.blocks()) {
            IndexSet c = a & b;
            if (c != 0) out.push_back(c);
        }
    return Partition(p.dimension(), std::move(out));
}

bool partition_less(const Partition& a, const Partition& b) {
    const auto& ba = a.blocks();
    const auto& bb = b.blocks();
    size_t nb = std::min(ba.size(), bb.size());
    for (size_t k = 0; k < nb; ++k) {
        std::vector<int> ia = set_indices(ba[k]);
        std::vector<int> ib = set_indices(bb[k]);
        if (ia != ib)
            return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
    }
    return ba.size() < bb.size();
}

namespace {

void enumerate_rec(int d, int next, std::vector<IndexSet>& blocks,
                   std::vector<Partition>& out) {
    if (next == d) {
        out.emplace_back(d, blocks);
        return;
    }
    IndexSet bit = IndexSet{1} << next;
    for (size_t k = 0; k < blocks.size(); ++k) {
        blocks[k] |= bit;
        enumerate_rec(d, next + 1, blocks, out);
        blocks[k] &= ~bit;
    }
    blocks.push_back(bit);
    enumerate_rec(d, next + 1, blocks, out);
    blocks.pop_back();
}

} // namespace

std::vector<Partition> enumerate_partitions(int d, std::optional<int> d0_cap) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    if (d > 8) throw std::invalid_argument("partition enumeration capped at d=8");
    std::vector<Partition> all;
    std::vector<IndexSet> blocks;
    enumerate_rec(d, 0, blocks, all);
    std::sort(all.begin(), all.end(), partition_less);
    if (!d0_cap) return all;
    std::vector<Partition> kept;
    for (const Partition& p : all)
        if (p.blocks().size() == 1 || p.max_block_size() <= *d0_cap)
            kept.push_back(p);
    return kept;
}

Partition parse_partition(std::string_view text, int d) {
    std::vector<IndexSet> blocks;
    IndexSet cur = 0;
    int value = -1;
    auto flush_value = [&] {
        if (value < 0) throw std::invalid_argument("partition text: missing index");
        if (value < 1 || value > d)
            throw std::invalid_argument("partition text: index out of range 1..d");
        cur |= IndexSet{1} << (value - 1);
        value = -1;
    };
    auto flush_block = [&] {
        flush_value();
        blocks.push_back(cur);
        cur = 0;
    };
    size_t pos = 0;
    while (pos < text.size()) {
        char c = text[pos];
        if (c >= '0' && c <= '9') {
            int digit = c - '0';
            value = (value < 0 ? 0 : value) * 10 + digit;
        } else if (c == ',') {
            flush_value();
        } else if (c == '|') {
            flush_block();
        } else if (c == ' ') {
            // permissive on blanks
        } else {
            throw std::invalid_argument(std::string("partition text: bad character '") + c + "'");
        }
        ++pos;
    }
    flush_block();
    return Partition(d, std::move(blocks));
}

std::string format_index_set(IndexSet I) {
    std::string out;
    for (int i : set_indices(I)) {
        if (!out.empty()) out += ',';
        out += std::to_string(i + 1);
    }
    return out;
}

std::string format_partition(const Partition& p) {
    std::string out;
    for (IndexSet b : p.blocks()) {
        if (!out.empty()) out += '|';
        out += format_index_set(b);
    }
    return out;
}

} // namespace adkde
