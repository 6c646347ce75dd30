// Generated by tests/oracles/fixtures.py. Do not edit.

#ifndef PFREE_TESTS_FIXTURES_HPP_
#define PFREE_TESTS_FIXTURES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>

namespace fixtures {

  inline constexpr std::array<const char*, 12> extremal_a2_k2{
      "1/2",
      "7/12",
      "5/9",
      "19/36",
      "47/90",
      "169/324",
      "14/27",
      "167/324",
      "749/1458",
      "2491/4860",
      "1367/2673",
      "4465/8748",
  };

  inline constexpr std::array<const char*, 12> extremal_a2_k3{
      "1/4",
      "1/3",
      "19/54",
      "149/432",
      "137/405",
      "491/1458",
      "983/2916",
      "5897/17496",
      "39745/118098",
      "52921/157464",
      "218126/649539",
      "356749/1062882",
  };

  inline constexpr std::array<const char*, 12> extremal_a2_k4{
      "1/4",
      "7/24",
      "5/18",
      "19/72",
      "47/180",
      "169/648",
      "7/27",
      "167/648",
      "749/2916",
      "2491/9720",
      "1367/5346",
      "4465/17496",
  };

  inline constexpr std::array<const char*, 12> semigroup_a2_k2{
      "1/2",
      "1/2",
      "1/2",
      "1/2",
      "1/2",
      "1/2",
      "1/2",
      "1/2",
      "1/2",
      "1/2",
      "1/2",
      "1/2",
  };

  inline constexpr std::array<const char*, 12> semigroup_a2_k3{
      "1/2",
      "1/2",
      "11/24",
      "27/64",
      "2/5",
      "149/384",
      "341/896",
      "3/8",
      "569/1536",
      "751/2048",
      "4/11",
      "17749/49152",
  };

  inline constexpr std::array<const char*, 12> semigroup_a2_k4{
      "1/2",
      "1/2",
      "11/24",
      "13/32",
      "29/80",
      "1/3",
      "71/224",
      "79/256",
      "175/576",
      "3/10",
      "417/1408",
      "449/1536",
  };

  inline constexpr std::array<const char*, 8> extremal_a3_k2{
      "1/3",
      "13/30",
      "106/225",
      "361/750",
      "1513/3125",
      "27343/56250",
      "53372/109375",
      "76491/156250",
  };

  inline constexpr std::array<const char*, 10> xy_a2_aa{
      "1/4",
      "1/6",
      "5/36",
      "13/108",
      "59/540",
      "74/729",
      "653/6804",
      "803/8748",
      "6971/78732",
      "3383/39366",
  };

  inline constexpr std::array<const char*, 10> xy_a2_ab{
      "0/1",
      "1/24",
      "5/108",
      "11/216",
      "43/810",
      "319/5832",
      "1139/20412",
      "991/17496",
      "3383/59049",
      "45517/787320",
  };

  inline constexpr std::array<const char*, 10> xy_a2_aA{
      "0/1",
      "0/1",
      "1/54",
      "1/36",
      "14/405",
      "19/486",
      "433/10206",
      "131/2916",
      "2768/59049",
      "1589/32805",
  };

  inline constexpr const char* extremal_a2_k2_mu8 = "334/81";

  struct TraceStep {
    std::size_t layer;
    std::uint64_t added;
    const char* measure;
  };

  inline constexpr std::array<TraceStep, 6> greedy_a2_k2_cap14{{
      {1, 1, "1/4"},
      {5, 10, "91/324"},
      {9, 544, "7915/26244"},
      {10, 1560, "8435/26244"},
      {14, 115828, "2165533/6377292"},
      {13, 37108, "2276857/6377292"},
  }};
  inline constexpr const char* greedy_a2_k2_cap14_stop = "layers-exhausted";

}  // namespace fixtures

#endif  // PFREE_TESTS_FIXTURES_HPP_
