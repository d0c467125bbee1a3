#pragma once

#include <atomic>
#include <ctime>
#include <functional>
#include <istream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "netbn/model.hpp"

namespace netbn {

// Maps log text onto a matrix event. First matching rule wins, in rule
// order.
struct EventRule {
    std::string event;    // event label
    std::string pattern;  // ECMAScript regex, searched in the message
};

class RuleSet {
public:
    RuleSet(std::string timestamp_format, std::vector<EventRule> rules);

    // One rule per event, matching the label as a whole word.
    static RuleSet defaults(const std::vector<EventId>& events);

    // JSON: {"timestamp_format": "...", "rules": [{"event", "pattern"}]}.
    // timestamp_format is optional. Throws ParseError, also for patterns
    // that do not compile.
    static RuleSet parse(const std::string& text,
                         const std::string& source_name = "<rules>");

    const std::string& timestamp_format() const { return timestamp_format_; }
    const std::vector<EventRule>& rules() const { return rules_; }

    // Label of the first rule matching the message.
    std::optional<std::string> match(const std::string& message) const;

private:
    std::string timestamp_format_;
    std::vector<EventRule> rules_;
    std::vector<std::regex> compiled_;
};

// One parsed log line. Malformed lines degrade to records with
// timestamp_ok false and no event; parsing never throws.
struct LogRecord {
    std::string timestamp_text;
    bool timestamp_ok = false;
    std::time_t timestamp = 0;  // UTC, valid when timestamp_ok
    std::string message;
    std::optional<std::string> event;  // matched event label
};

LogRecord parse_line(const std::string& line, const RuleSet& rules);

struct StreamStats {
    long long lines = 0;
    long long matched = 0;
};

// Parses every line of the stream. The callback returning false stops the
// scan early.
StreamStats for_each_record(std::istream& in, const RuleSet& rules,
                            const std::function<bool(const LogRecord&)>& callback);

// Tail-follows a file, starting at the current end of existing content
// when from_start is false. Polls for growth until `stop` becomes true or
// the callback returns false. Throws Error when the file cannot be opened.
StreamStats follow_file(const std::string& path, const RuleSet& rules,
                        const std::atomic<bool>& stop,
                        const std::function<bool(const LogRecord&)>& callback,
                        bool from_start = true, int poll_ms = 50);

// Canonical alarm text for an event, label first.
std::string default_event_message(const EventId& event);

// Synthetic log for one failure: the failure's event sequence, one line
// per event, timestamps `spacing_seconds` apart from `base` (UTC).
std::string synth_log(const EventFailureMatrix& m, const FailureId& f,
                      std::time_t base, int spacing_seconds = 1);

// 2025-01-01 00:00:00 UTC.
std::time_t default_log_base();

std::string format_timestamp(std::time_t t,
                             const std::string& format = "%Y-%m-%d %H:%M:%S");

}  // namespace netbn
