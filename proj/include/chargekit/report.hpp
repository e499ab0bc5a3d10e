#pragma once

// Command output: labeled text sections for people, plus a line-oriented
// key=value block that tools can diff.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace chargekit {

enum class ReportStatus { ok, violation, error };

inline const char* to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::ok: return "ok";
    case ReportStatus::violation: return "violation";
    case ReportStatus::error: return "error";
  }
  return "error";
}

class Report {
 public:
  struct Section {
    std::string title;
    std::vector<std::string> lines;
  };

  ReportStatus status = ReportStatus::ok;

  /// Starts a new section; subsequent `line` calls append to it.
  Report& section(std::string title) {
    sections_.push_back(Section{std::move(title), {}});
    return *this;
  }

  Report& line(std::string text) {
    if (sections_.empty()) section("");
    sections_.back().lines.push_back(std::move(text));
    return *this;
  }

  /// Appends every line of a multi-line block.
  Report& block(const std::string& text) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto end = text.find('\n', pos);
      line(text.substr(pos, end == std::string::npos ? std::string::npos : end - pos));
      if (end == std::string::npos) break;
      pos = end + 1;
    }
    return *this;
  }

  Report& key(std::string k, std::string v) {
    machine_.emplace_back(std::move(k), std::move(v));
    return *this;
  }

  const std::vector<Section>& sections() const { return sections_; }
  const std::vector<std::pair<std::string, std::string>>& machine() const { return machine_; }

  /// Keys in insertion order, led by the status.
  std::string machine_block() const {
    std::string out = "status=" + std::string(to_string(status)) + "\n";
    for (const auto& [k, v] : machine_) out += k + "=" + v + "\n";
    return out;
  }

  std::string render() const {
    std::string out;
    for (const auto& s : sections_) {
      if (!s.title.empty()) out += "== " + s.title + " ==\n";
      for (const auto& l : s.lines) out += l + "\n";
    }
    out += "== machine ==\n" + machine_block();
    return out;
  }

 private:
  std::vector<Section> sections_;
  std::vector<std::pair<std::string, std::string>> machine_;
};

}  // namespace chargekit
