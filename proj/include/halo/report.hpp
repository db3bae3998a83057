#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace halo {

// Line-oriented report records with an alternative nested rendering. One
// record per logical fact keeps the flat output machine-greppable; the nested
// mode prints the same fields as an indented block per record.
struct ReportField {
    std::string key;
    std::string value;
    bool bare = false; // flat mode prints the value alone (positional field)
};

struct ReportRecord {
    std::string kind;
    std::vector<ReportField> fields;

    ReportRecord& add(const std::string& key, const std::string& value)
    {
        fields.push_back({key, value, false});
        return *this;
    }

    ReportRecord& add_bare(const std::string& key, const std::string& value)
    {
        fields.push_back({key, value, true});
        return *this;
    }
};

class Report {
  public:
    ReportRecord& record(const std::string& kind)
    {
        records_.push_back({kind, {}});
        return records_.back();
    }

    void render_flat(std::ostream& out) const
    {
        for (const ReportRecord& r : records_) {
            out << r.kind;
            for (const ReportField& f : r.fields) {
                if (f.bare)
                    out << ' ' << f.value;
                else
                    out << ' ' << f.key << '=' << f.value;
            }
            out << '\n';
        }
    }

    void render_nested(std::ostream& out) const
    {
        for (const ReportRecord& r : records_) {
            out << r.kind << " {\n";
            for (const ReportField& f : r.fields)
                out << "  " << f.key << ": " << f.value << "\n";
            out << "}\n";
        }
    }

    bool empty() const { return records_.empty(); }

  private:
    std::vector<ReportRecord> records_;
};

} // namespace halo
