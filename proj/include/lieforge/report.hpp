#pragma once

#include "lieforge/scalar.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieforge {

enum class Verdict { Pass, Fail };

// Exact data exhibiting a failure. Indices are 0-based basis indices; the
// text and JSON renderers print them 1-based.
struct Witness {
    std::vector<std::size_t> indices;
    std::vector<Scalar> values;
    std::string detail;

    bool empty() const { return indices.empty() && values.empty() && detail.empty(); }
};

struct CheckItem {
    std::string name;
    Verdict verdict = Verdict::Pass;
    Witness witness;

    bool passed() const { return verdict == Verdict::Pass; }
};

// Informational output attached to a report (solved vectors, metrics, ...).
// Notes never influence the overall verdict.
struct CheckNote {
    std::string name;
    std::string text;
};

class CheckReport {
public:
    void pass(std::string name);
    // Throws std::logic_error if the witness is empty.
    void fail(std::string name, Witness witness);
    void add(std::string name, bool ok, Witness witness_if_failed);
    void note(std::string name, std::string text);
    // Appends every item and note of `other`, prefixing names with `prefix`.
    void merge(const CheckReport& other, const std::string& prefix = {});

    bool passed() const;
    const std::vector<CheckItem>& items() const { return items_; }
    const std::vector<CheckNote>& notes() const { return notes_; }
    const CheckItem* find(const std::string& name) const;
    // First failing item, or nullptr.
    const CheckItem* first_failure() const;

private:
    std::vector<CheckItem> items_;
    std::vector<CheckNote> notes_;
};

// Thrown when an operation's precondition does not hold. Carries the report
// whose failing items are the witnesses.
class PreconditionError : public std::runtime_error {
public:
    PreconditionError(const std::string& what, CheckReport report)
        : std::runtime_error(what), report_(std::move(report))
    {
    }
    const CheckReport& report() const { return report_; }

private:
    CheckReport report_;
};

}  // namespace lieforge
