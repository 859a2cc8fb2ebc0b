#pragma once

#include <array>
#include <string_view>

namespace evd {

/// The ten quantities whose ranges the analysis tracks.
enum class Var {
    A = 0,
    T,
    Cs,
    Sn,
    DiagA,   // the 2x2 pivot diagonal a after its update
    DiagB,   // the 2x2 pivot diagonal b as read
    OffC,    // the annihilated off-diagonal c as read
    X,
    Lambda,
    Tmp,
};

inline constexpr std::size_t kVarCount = 10;

inline constexpr std::array<Var, kVarCount> kAllVars = {
    Var::A,     Var::T,    Var::Cs, Var::Sn,     Var::DiagA,
    Var::DiagB, Var::OffC, Var::X,  Var::Lambda, Var::Tmp,
};

constexpr std::string_view var_name(Var v) {
    switch (v) {
        case Var::A: return "A";
        case Var::T: return "t";
        case Var::Cs: return "cs";
        case Var::Sn: return "sn";
        case Var::DiagA: return "a";
        case Var::DiagB: return "b";
        case Var::OffC: return "c";
        case Var::X: return "X";
        case Var::Lambda: return "lambda";
        case Var::Tmp: return "tmp";
    }
    return "?";
}

}  // namespace evd
