#include "doctest.h"

#include "adkde/partition.hpp"

#include <cstdint>
#include <vector>

using namespace adkde;

namespace {

// Independent Bell-number oracle: Peirce triangle, B_d = last entry of row d.
std::uint64_t bell_number(int d) {
    std::vector<std::uint64_t> row{1};
    for (int i = 1; i < d; ++i) {
        std::vector<std::uint64_t> next{row.back()};
        for (std::uint64_t v : row) next.push_back(next.back() + v);
        row = next;
    }
    return row.back();
}

} // namespace

TEST_SUITE("partition") {

TEST_CASE("canonical form and structural equality") {
    Partition p(4, {0b1100u, 0b0011u});
    CHECK(p.blocks() == std::vector<IndexSet>{0b0011u, 0b1100u});
    Partition q(4, {0b0011u, 0b1100u});
    CHECK(p == q);
    CHECK(p.block_containing(2) == 0b1100u);
    CHECK(p.max_block_size() == 2);
}

TEST_CASE("constructor rejects bad block systems") {
    CHECK_THROWS(Partition(3, {0b011u, 0b110u}));          // overlap
    CHECK_THROWS(Partition(3, {0b011u}));                  // does not cover
    CHECK_THROWS(Partition(3, {0b111u, 0u}));              // empty block
    CHECK_THROWS(Partition(0, {}));
}

TEST_CASE("compose basics") {
    // {{1,2},{3,4}} o {{1},{2},{3,4}} = {{1},{2},{3,4}}
    Partition p(4, {0b0011u, 0b1100u});
    Partition q(4, {0b0001u, 0b0010u, 0b1100u});
    CHECK(compose(p, q) == q);
    CHECK(compose(p, Partition::one_block(4)) == p);
    CHECK_THROWS(compose(p, Partition::one_block(3)));
}

TEST_CASE("compose is commutative, idempotent, refining for d<=4") {
    for (int d = 1; d <= 4; ++d) {
        auto all = enumerate_partitions(d);
        for (const auto& p : all) {
            CHECK(compose(p, p) == p);
            for (const auto& q : all) {
                Partition pq = compose(p, q);
                CHECK(pq == compose(q, p));
                CHECK(pq.refines(p));
                CHECK(pq.refines(q));
            }
        }
    }
}

TEST_CASE("enumeration matches Bell numbers") {
    CHECK(bell_number(2) == 2);
    CHECK(bell_number(3) == 5);
    CHECK(bell_number(4) == 15);   // Bell, not the 12 sometimes quoted
    CHECK(bell_number(5) == 52);
    for (int d = 1; d <= 6; ++d)
        CHECK(enumerate_partitions(d).size() == bell_number(d));
    CHECK_THROWS(enumerate_partitions(9));
}

TEST_CASE("enumeration order is deterministic and strictly sorted") {
    auto all = enumerate_partitions(4);
    for (size_t i = 1; i < all.size(); ++i) {
        CHECK(partition_less(all[i - 1], all[i]));
        CHECK(!partition_less(all[i], all[i - 1]));
    }
    CHECK(all.front() == Partition::singletons(4));
}

TEST_CASE("d0_cap keeps one-block plus capped partitions") {
    auto capped = enumerate_partitions(3, 1);
    REQUIRE(capped.size() == 2);
    CHECK(capped[0] == Partition::singletons(3));
    CHECK(capped[1] == Partition::one_block(3));
    auto capped2 = enumerate_partitions(4, 2);
    for (const auto& p : capped2)
        CHECK((p.blocks().size() == 1 || p.max_block_size() <= 2));
}

TEST_CASE("singletons order before one-block") {
    CHECK(partition_less(Partition::singletons(2), Partition::one_block(2)));
}

TEST_CASE("project") {
    std::vector<double> x{7, 8, 9};
    CHECK(project(x, 0b101u) == std::vector<double>{7, 9});
    CHECK(project(x, full_set(3)) == x);
    CHECK(project({1.5, 2.5}, 0b10u) == std::vector<double>{2.5});
    CHECK_THROWS(project({1.0}, 0b10u));
}

TEST_CASE("text round-trip") {
    for (int d = 1; d <= 5; ++d)
        for (const auto& p : enumerate_partitions(d)) {
            std::string s = format_partition(p);
            CHECK(parse_partition(s, d) == p);
        }
    CHECK(format_partition(Partition(4, {0b0011u, 0b1100u})) == "1,2|3,4");
    CHECK(parse_partition("1,2|3,4", 4) == Partition(4, {0b0011u, 0b1100u}));
    CHECK_THROWS(parse_partition("1,2|3", 4));     // not a cover
    CHECK_THROWS(parse_partition("1,5", 4));       // out of range
    CHECK_THROWS(parse_partition("1,,2", 2));
}

} // TEST_SUITE
