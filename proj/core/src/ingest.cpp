#include "netbn/ingest.hpp"

#include <cctype>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "netbn/error.hpp"

namespace netbn {

namespace {

constexpr const char* kDefaultTimestampFormat = "%Y-%m-%d %H:%M:%S";

std::regex compile_rule(const EventRule& rule, const std::string& source_name) {
    try {
        return std::regex(rule.pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        throw ParseError(source_name, 0,
                         "pattern for event '" + rule.event +
                             "' does not compile: " + e.what());
    }
}

}  // namespace

RuleSet::RuleSet(std::string timestamp_format, std::vector<EventRule> rules)
    : timestamp_format_(std::move(timestamp_format)), rules_(std::move(rules)) {
    if (timestamp_format_.empty()) timestamp_format_ = kDefaultTimestampFormat;
    if (rules_.empty()) throw ValidationError("rule set has no rules");
    compiled_.reserve(rules_.size());
    for (const auto& rule : rules_) compiled_.push_back(compile_rule(rule, "<rules>"));
}

RuleSet RuleSet::defaults(const std::vector<EventId>& events) {
    std::vector<EventRule> rules;
    rules.reserve(events.size());
    for (const auto& e : events) {
        std::string escaped;
        for (char c : e.label) {
            if (!std::isalnum(static_cast<unsigned char>(c))) escaped += '\\';
            escaped += c;
        }
        rules.push_back({e.label, "\\b" + escaped + "\\b"});
    }
    return RuleSet(kDefaultTimestampFormat, std::move(rules));
}

RuleSet RuleSet::parse(const std::string& text, const std::string& source_name) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source_name, 0, e.what());
    }
    try {
        if (!j.is_object()) throw ParseError(source_name, 0, "expected a JSON object");
        std::string format = j.value("timestamp_format", kDefaultTimestampFormat);
        std::vector<EventRule> rules;
        for (const auto& r : j.at("rules")) {
            EventRule rule;
            rule.event = r.at("event").get<std::string>();
            rule.pattern = r.at("pattern").get<std::string>();
            compile_rule(rule, source_name);
            rules.push_back(std::move(rule));
        }
        if (rules.empty()) throw ParseError(source_name, 0, "rule set has no rules");
        return RuleSet(std::move(format), std::move(rules));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source_name, 0, e.what());
    }
}

std::optional<std::string> RuleSet::match(const std::string& message) const {
    for (std::size_t i = 0; i < rules_.size(); ++i)
        if (std::regex_search(message, compiled_[i])) return rules_[i].event;
    return std::nullopt;
}

LogRecord parse_line(const std::string& line, const RuleSet& rules) {
    LogRecord record;
    std::istringstream in(line);
    std::tm tm{};
    in >> std::get_time(&tm, rules.timestamp_format().c_str());
    if (!in.fail()) {
        auto consumed = in.tellg();
        record.timestamp_ok = true;
        record.timestamp = timegm(&tm);
        std::string rest = consumed < 0
                               ? std::string()
                               : line.substr(static_cast<std::size_t>(consumed));
        auto b = rest.find_first_not_of(" \t");
        record.message = b == std::string::npos ? "" : rest.substr(b);
        record.timestamp_text =
            line.substr(0, line.size() - rest.size());
        auto e = record.timestamp_text.find_last_not_of(" \t");
        record.timestamp_text =
            e == std::string::npos ? "" : record.timestamp_text.substr(0, e + 1);
    } else {
        record.message = line;
    }
    if (!record.message.empty() && record.message.back() == '\r')
        record.message.pop_back();
    record.event = rules.match(record.message);
    return record;
}

StreamStats for_each_record(std::istream& in, const RuleSet& rules,
                            const std::function<bool(const LogRecord&)>& callback) {
    StreamStats stats;
    std::string line;
    while (std::getline(in, line)) {
        ++stats.lines;
        LogRecord record = parse_line(line, rules);
        if (record.event) ++stats.matched;
        if (!callback(record)) break;
    }
    return stats;
}

StreamStats follow_file(const std::string& path, const RuleSet& rules,
                        const std::atomic<bool>& stop,
                        const std::function<bool(const LogRecord&)>& callback,
                        bool from_start, int poll_ms) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    if (!from_start) in.seekg(0, std::ios::end);

    StreamStats stats;
    std::string line;
    bool keep_going = true;
    while (keep_going && !stop.load()) {
        if (std::getline(in, line)) {
            ++stats.lines;
            LogRecord record = parse_line(line, rules);
            if (record.event) ++stats.matched;
            keep_going = callback(record);
            continue;
        }
        if (in.bad()) break;
        // At end of current content: clear EOF and wait for growth.
        in.clear();
        std::this_thread::sleep_for(std::chrono::milliseconds(poll_ms));
    }
    return stats;
}

std::string default_event_message(const EventId& event) {
    static const char* kPhrases[] = {
        "clock drift exceeding threshold", "temperature rising above limit",
        "OSNR below lower threshold",      "no signal from peer",
        "laser bias current out of range",
    };
    std::string phrase = event.index >= 1 && event.index <= 5
                             ? kPhrases[event.index - 1]
                             : "threshold crossing alarm";
    return event.label + " " + phrase;
}

std::string synth_log(const EventFailureMatrix& m, const FailureId& f,
                      std::time_t base, int spacing_seconds) {
    if (spacing_seconds < 0) throw ValidationError("spacing must be non-negative");
    std::string out;
    int step = 0;
    for (const auto& e : event_sequence(m, f)) {
        out += format_timestamp(base + step * spacing_seconds);
        out += ' ';
        out += default_event_message(e);
        out += '\n';
        ++step;
    }
    return out;
}

std::time_t default_log_base() {
    std::tm tm{};
    tm.tm_year = 2025 - 1900;
    tm.tm_mon = 0;
    tm.tm_mday = 1;
    return timegm(&tm);
}

std::string format_timestamp(std::time_t t, const std::string& format) {
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[128];
    std::size_t n = std::strftime(buf, sizeof buf, format.c_str(), &tm);
    return std::string(buf, n);
}

}  // namespace netbn
