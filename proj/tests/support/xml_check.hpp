#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace signorini::testing {

/// Minimal XML well-formedness check: declaration/comments skipped, tags must
/// nest properly, attribute quotes respected. Returns an empty string when
/// well formed, otherwise a description of the first problem.
inline std::string xml_check(std::string_view doc) {
    std::vector<std::string> stack;
    size_t i = 0;
    while (i < doc.size()) {
        if (doc[i] != '<') {
            ++i;
            continue;
        }
        if (doc.compare(i, 4, "<!--") == 0) {
            const size_t end = doc.find("-->", i);
            if (end == std::string_view::npos) return "unterminated comment";
            i = end + 3;
            continue;
        }
        if (doc.compare(i, 2, "<?") == 0) {
            const size_t end = doc.find("?>", i);
            if (end == std::string_view::npos) return "unterminated declaration";
            i = end + 2;
            continue;
        }
        // scan to the closing '>' outside quotes
        size_t j = i + 1;
        char quote = 0;
        while (j < doc.size() && (quote != 0 || doc[j] != '>')) {
            if (quote == 0 && (doc[j] == '"' || doc[j] == '\''))
                quote = doc[j];
            else if (doc[j] == quote)
                quote = 0;
            ++j;
        }
        if (j >= doc.size()) return "unterminated tag";
        std::string_view tag = doc.substr(i + 1, j - i - 1);
        if (!tag.empty() && tag.front() == '/') {
            std::string name(tag.substr(1));
            if (stack.empty()) return "closing tag without opener: " + name;
            if (stack.back() != name)
                return "mismatched closing tag: expected " + stack.back() + ", got " + name;
            stack.pop_back();
        } else if (!tag.empty() && tag.back() != '/') {
            const size_t sp = tag.find_first_of(" \t\r\n");
            stack.emplace_back(tag.substr(0, sp));
        }
        i = j + 1;
    }
    if (!stack.empty()) return "unclosed tag: " + stack.back();
    return {};
}

}  // namespace signorini::testing
