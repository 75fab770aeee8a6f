#pragma once

// Published reference values checked by `verify-tables`.  Kept as data so the
// verifier never derives its own expectations.

#include <array>
#include <string_view>

namespace nilprob::expected {

inline constexpr std::string_view version = "1";

struct Row {
  std::string_view label;
  std::string_view group_spec;  // group spec of the pair
  std::string_view value;       // "p/q"
};

/// nu~(S) for the simple groups with small generation deficit.
inline constexpr std::array<Row, 10> table1{{
    {"PSL(2,7)", "psl2:7", "3/56"},
    {"PSL(2,8)", "psl2:8", "1/56"},
    {"PSL(2,11)", "psl2:11", "2/165"},
    {"PSL(2,13)", "psl2:13", "3/364"},
    {"PSL(3,3)", "file:psl3_3_aut.gens", "1/234"},
    // printed as 5/4032 in the table body; 13/4032 is the maximum of the
    // PSL(3,4) tau values below
    {"PSL(3,4)", "file:psl3_4_aut.gens", "13/4032"},
    {"PSU(4,2)", "file:psu4_2_aut.gens", "67/23760"},
    {"PSp(6,2)", "file:psp6_2.gens", "1/4536"},
    {"M11", "file:m11.gens", "1/440"},
    {"M12", "file:m12_aut.gens", "7/11880"},
}};

/// nu~(Alt(n)) for 5 <= n <= 9.
inline constexpr std::array<Row, 5> alternating{{
    {"Alt(5)", "alt:5", "1/12"},
    {"Alt(6)", "alt:6", "1/36"},
    {"Alt(7)", "alt:7", "1/210"},
    {"Alt(8)", "alt:8", "19/9720"},
    {"Alt(9)", "alt:9", "1/2160"},
}};

/// tau(G, S) for the almost simple groups G with socle S = PSL(3,4).
inline constexpr std::array<Row, 6> table2{{
    {"S", "file:psl3_4.gens", "5/4032"},
    {"S.2_1", "file:psl3_4_2_1.gens", "13/4032"},
    {"S.2_2", "file:psl3_4_2_2.gens", "19/6720"},
    {"S.2_3", "file:psl3_4_2_3.gens", "5/4032"},
    {"S.2^2", "file:psl3_4_2_2x2.gens", "13/4032"},
    {"S.6", "file:psl3_4_6.gens", "1/2520"},
}};

/// The maximum over table2, which is nu~(PSL(3,4)).
inline constexpr std::string_view table2_max = "13/4032";

/// Generation probability bound input for Alt(m), m >= 9.
inline constexpr std::string_view pi_tilde_alt9 = "15403/18144";
inline constexpr std::string_view alt_bound_n10 = "12007/181440";

}  // namespace nilprob::expected
