#include "pdv/oracle/language_oracle.hpp"

#include "pdv/errors.hpp"

namespace pdv {

DfaOracle::DfaOracle(Dfa dfa) : LanguageOracle(dfa.alphabet()), dfa_(std::move(dfa)) {}

std::string DfaOracle::describe() const { return "dfa(" + std::to_string(dfa_.num_states()) + " states)"; }

FaultInjectedOracle::FaultInjectedOracle(Dfa base, Dfa fault)
    : LanguageOracle(base.alphabet()), base_(std::move(base)), fault_(std::move(fault)) {
    if (base_.alphabet() != fault_.alphabet()) {
        throw input_error("fault automaton uses a different alphabet than the base automaton");
    }
}

std::string FaultInjectedOracle::describe() const {
    return "xor(base " + std::to_string(base_.num_states()) + " states, fault " +
           std::to_string(fault_.num_states()) + " states)";
}

} // namespace pdv
