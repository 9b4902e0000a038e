#pragma once

#include <stdexcept>
#include <string>

namespace godel {

// All library failures derive from Error and carry a stable machine code.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define GODEL_ERROR(Name)                                                   \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& msg = {}) : Error(#Name, msg) {}   \
    }

GODEL_ERROR(RenderTooLarge);
GODEL_ERROR(AlienSymbol);
GODEL_ERROR(NotInSubset);
GODEL_ERROR(SearchBudgetExceeded);
GODEL_ERROR(MaterializationTooLarge);
GODEL_ERROR(StageCapExceeded);
GODEL_ERROR(NotYetEnumerated);
GODEL_ERROR(NoConstC);
GODEL_ERROR(NoFreeVariable);
GODEL_ERROR(NotInImage);
GODEL_ERROR(NotClosed);
GODEL_ERROR(NotACode);
GODEL_ERROR(UnsupportedPair);
GODEL_ERROR(NoFixedPointFound);
GODEL_ERROR(DomainTooLarge);

#undef GODEL_ERROR

class NotWellFormed : public Error {
public:
    NotWellFormed(size_t pos, const std::string& msg)
        : Error("NotWellFormed", "at " + std::to_string(pos) + ": " + msg), pos_(pos) {}
    size_t position() const { return pos_; }

private:
    size_t pos_;
};

}  // namespace godel
