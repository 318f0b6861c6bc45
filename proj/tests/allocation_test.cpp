#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "survsched/allocation.hpp"
#include "survsched/errors.hpp"

using namespace survsched;

namespace {

// worked example(c) by hand: camera3 sb1, camera5 + camera6 sb2, camera7 sb3.
AllocationMap worked_example_mqbs(const ScheduleInstance& inst) {
  AllocationMap a = AllocationMap::empty(7, inst.spectrum);
  a.place_camera(2, 0, 4);
  a.place_camera(4, 1, 3);
  a.place_camera(6, 2, 4);
  a.place_camera(5, 1, 2);
  return a;
}

bool has_kind(const std::vector<Violation>& v, ViolationKind kind) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
}

}  // namespace

TEST_CASE("place_contiguous packs left to right") {
  const SpectrumConfig cfg = SpectrumConfig::uniform(3, 5);
  const auto ranges = place_contiguous({{Holder::kCamera, 5, 0, 2}, {Holder::kCamera, 3, 0, 3}}, cfg);
  REQUIRE(ranges.size() == 2);
  CHECK(ranges[0].first_rb == 0);
  CHECK(ranges[0].last_rb() == 1);
  CHECK(ranges[1].first_rb == 2);
  CHECK(ranges[1].last_rb() == 4);

  const auto whole = place_contiguous({{Holder::kCamera, 0, 1, 5}}, cfg);
  CHECK(whole[0].first_rb == 0);
  CHECK(whole[0].last_rb() == 4);

  CHECK_THROWS_AS(place_contiguous({{Holder::kCamera, 0, 0, 6}}, cfg), CapacityExceeded);
  CHECK_THROWS_AS(place_contiguous({{Holder::kCamera, 0, 0, 3}, {Holder::kCamera, 1, 0, 3}}, cfg),
                  CapacityExceeded);
}

TEST_CASE("objective values") {
  const ScheduleInstance inst = fixtures::worked_example();
  CHECK(objective_value(AllocationMap::empty(7, inst.spectrum), inst.scenario) == 0.0);
  CHECK(objective_value(worked_example_mqbs(inst), inst.scenario) == 21.0);
  AllocationMap b = AllocationMap::empty(7, inst.spectrum);
  b.place_camera(5, 0, 2);
  b.place_camera(0, 1, 3);
  b.place_camera(1, 2, 3);
  b.place_camera(3, 0, 3);
  CHECK(objective_value(b, inst.scenario) == 15.0);
  CHECK(validate_allocation(b, inst).empty());
}

TEST_CASE("validator accepts the hand-built optimum") {
  const ScheduleInstance inst = fixtures::worked_example();
  const AllocationMap a = worked_example_mqbs(inst);
  CHECK(validate_allocation(a, inst).empty());
  CHECK(a.remaining == std::vector<int>{1, 0, 1});
  CHECK(a.used_rbs() == 13);
}

TEST_CASE("validator flags a camera in two sub-bands") {
  const ScheduleInstance inst = fixtures::worked_example();
  AllocationMap a = worked_example_mqbs(inst);
  a.x[2][2] = 1;
  const auto v = validate_allocation(a, inst);
  CHECK(has_kind(v, ViolationKind::kMultipleSubBands));
}

TEST_CASE("validator flags the object lost when camera7 leaves") {
  const ScheduleInstance inst = fixtures::worked_example();
  AllocationMap a = worked_example_mqbs(inst);
  a.release_camera(6);
  const auto v = validate_allocation(a, inst);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::kObjectUncovered);
  CHECK(v[0].object == 5);
}

TEST_CASE("validator flags broken layouts") {
  const ScheduleInstance inst = fixtures::worked_example();

  SUBCASE("non-binary") {
    AllocationMap a = worked_example_mqbs(inst);
    a.x[0][2] = 2;
    CHECK(has_kind(validate_allocation(a, inst), ViolationKind::kNonBinary));
  }
  SUBCASE("overlap") {
    AllocationMap a = worked_example_mqbs(inst);
    a.ranges[3].first_rb = 1;  // camera6 on top of camera5
    const auto v = validate_allocation(a, inst);
    CHECK(has_kind(v, ViolationKind::kRangeOverlap));
  }
  SUBCASE("out of bounds") {
    AllocationMap a = worked_example_mqbs(inst);
    a.ranges[0].first_rb = 3;
    CHECK(has_kind(validate_allocation(a, inst), ViolationKind::kRangeOutOfBounds));
  }
  SUBCASE("wrong size") {
    AllocationMap a = worked_example_mqbs(inst);
    a.ranges[0].rb_count = 3;
    a.remaining[0] = 2;
    CHECK(has_kind(validate_allocation(a, inst), ViolationKind::kRangeMismatch));
  }
  SUBCASE("remaining out of sync") {
    AllocationMap a = worked_example_mqbs(inst);
    a.remaining[2] = 5;
    CHECK(has_kind(validate_allocation(a, inst), ViolationKind::kRemainingMismatch));
  }
  SUBCASE("capacity") {
    AllocationMap a = worked_example_mqbs(inst);
    a.x[0][0] = 1;  // camera1 needs 5 in sb1, only 1 left
    a.ranges.push_back({Holder::kCamera, 0, 0, 4, 5});
    a.remaining[0] = -4;
    CHECK(has_kind(validate_allocation(a, inst), ViolationKind::kCapacityExceeded));
  }
  SUBCASE("unusable sub-band") {
    ScheduleInstance holed = inst;
    holed.channel.rb_req[0][2].reset();
    CHECK(has_kind(validate_allocation(worked_example_mqbs(inst), holed),
                   ViolationKind::kUnusableSubBand));
  }
  SUBCASE("shape") {
    AllocationMap a = AllocationMap::empty(6, inst.spectrum);
    CHECK(has_kind(validate_allocation(a, inst), ViolationKind::kShapeMismatch));
  }
}

TEST_CASE("mutators keep sub-bands packed") {
  const ScheduleInstance inst = fixtures::worked_example();
  AllocationMap a = AllocationMap::empty(7, inst.spectrum);
  a.place_camera(5, 1, 2);
  a.place_background(7, 1, 1);
  a.place_camera(4, 1, 2);
  CHECK_THROWS_AS(a.place_camera(3, 1, 1), CapacityExceeded);
  CHECK_THROWS_AS(a.place_camera(5, 0, 1), InvalidArgument);
  a.release_camera(5);
  CHECK(a.remaining[1] == 2);
  CHECK(a.range_of(Holder::kBackground, 7)->first_rb == 0);
  CHECK(a.range_of(Holder::kCamera, 4)->first_rb == 1);
  a.release_background(7);
  CHECK(a.range_of(Holder::kCamera, 4)->first_rb == 0);
  CHECK(a.remaining[1] == 3);
  CHECK(a.range_of(Holder::kBackground, 7) == nullptr);
}

TEST_CASE("grid rendering") {
  const ScheduleInstance inst = fixtures::worked_example();
  AllocationMap a = AllocationMap::empty(7, inst.spectrum);
  a.place_camera(5, 0, 2);
  a.place_camera(3, 0, 3);
  a.place_background(2, 2, 1);
  CHECK(render_grid(a) ==
        "Sub-band 1 | Camera6 Camera6 Camera4 Camera4 Camera4\n"
        "Sub-band 2 | - - - - -\n"
        "Sub-band 3 | Flow2 - - - -\n");
}

TEST_CASE("instance dimension checks") {
  ScheduleInstance inst = fixtures::worked_example();
  inst.validate();
  inst.spectrum = SpectrumConfig::uniform(4, 5);
  CHECK_THROWS_AS(inst.validate(), InvalidArgument);
}
