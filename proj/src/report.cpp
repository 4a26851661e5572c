#include "lieforge/report.hpp"

#include <algorithm>

namespace lieforge {

void CheckReport::pass(std::string name)
{
    items_.push_back(CheckItem{std::move(name), Verdict::Pass, {}});
}

void CheckReport::fail(std::string name, Witness witness)
{
    if (witness.empty())
        throw std::logic_error("failed check '" + name + "' has no witness");
    items_.push_back(CheckItem{std::move(name), Verdict::Fail, std::move(witness)});
}

void CheckReport::add(std::string name, bool ok, Witness witness_if_failed)
{
    if (ok)
        pass(std::move(name));
    else
        fail(std::move(name), std::move(witness_if_failed));
}

void CheckReport::note(std::string name, std::string text)
{
    notes_.push_back(CheckNote{std::move(name), std::move(text)});
}

void CheckReport::merge(const CheckReport& other, const std::string& prefix)
{
    for (const auto& item : other.items_)
        items_.push_back(CheckItem{prefix + item.name, item.verdict, item.witness});
    for (const auto& n : other.notes_)
        notes_.push_back(CheckNote{prefix + n.name, n.text});
}

bool CheckReport::passed() const
{
    return std::all_of(items_.begin(), items_.end(), [](const CheckItem& i) { return i.passed(); });
}

const CheckItem* CheckReport::find(const std::string& name) const
{
    const auto it = std::find_if(items_.begin(), items_.end(), [&](const CheckItem& i) { return i.name == name; });
    return it == items_.end() ? nullptr : &*it;
}

const CheckItem* CheckReport::first_failure() const
{
    const auto it = std::find_if(items_.begin(), items_.end(), [](const CheckItem& i) { return !i.passed(); });
    return it == items_.end() ? nullptr : &*it;
}

}  // namespace lieforge
