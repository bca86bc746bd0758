#include "ocrect/pgm_io.hpp"

#include <cctype>
#include <fstream>
#include <string>

namespace ocrect {

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open mask file: " + path.string());
    }
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// PNM token scanner: skips whitespace and '#' comment lines.
struct Scanner {
    const std::string& buf;
    std::size_t pos = 0;
    const std::filesystem::path& path;

    void skip_space_and_comments() {
        while (pos < buf.size()) {
            const char c = buf[pos];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else if (c == '#') {
                while (pos < buf.size() && buf[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    std::string token() {
        skip_space_and_comments();
        std::size_t start = pos;
        while (pos < buf.size() && !std::isspace(static_cast<unsigned char>(buf[pos]))) ++pos;
        if (start == pos) {
            throw ValidationError(path.string() + ": truncated PGM header");
        }
        return buf.substr(start, pos - start);
    }

    long int_token(const char* what) {
        const std::string t = token();
        for (char c : t) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw ValidationError(path.string() + ": bad PGM " + what + " '" + t + "'");
            }
        }
        if (t.size() > 9) {
            throw ValidationError(path.string() + ": PGM " + what + " out of range");
        }
        return std::stol(t);
    }
};

}  // namespace

MaskMap read_mask(const std::filesystem::path& path, const LabelSpace& ls) {
    const std::string buf = slurp(path);
    Scanner sc{buf, 0, path};

    if (sc.token() != "P5") {
        throw ValidationError(path.string() + ": not a binary PGM (P5) file");
    }
    const long width = sc.int_token("width");
    const long height = sc.int_token("height");
    const long maxval = sc.int_token("maxval");
    if (width < 1 || height < 1) {
        throw ValidationError(path.string() + ": bad PGM dimensions");
    }
    if (maxval != 255) {
        throw ValidationError(path.string() + ": PGM maxval must be 255, got " +
                              std::to_string(maxval));
    }
    // Exactly one whitespace byte separates the header from the payload.
    if (sc.pos >= buf.size() || !std::isspace(static_cast<unsigned char>(buf[sc.pos]))) {
        throw ValidationError(path.string() + ": malformed PGM header");
    }
    ++sc.pos;

    const std::size_t expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (buf.size() - sc.pos != expected) {
        throw ValidationError(path.string() + ": PGM payload has " +
                              std::to_string(buf.size() - sc.pos) + " bytes, expected " +
                              std::to_string(expected));
    }

    MaskMap mask(static_cast<int>(height), static_cast<int>(width));
    for (std::size_t i = 0; i < expected; ++i) {
        const auto v = static_cast<std::uint8_t>(buf[sc.pos + i]);
        if (v != kIgnoreLabel && !ls.valid_class(v)) {
            throw ValidationError(path.string() + ": pixel value " + std::to_string(v) +
                                  " outside [0, " + std::to_string(ls.num_foreground()) +
                                  "] and not the ignore label");
        }
        mask.values[i] = v;
    }
    return mask;
}

void write_mask(const MaskMap& mask, const std::filesystem::path& path) {
    if (mask.height < 1 || mask.width < 1 ||
        mask.values.size() != static_cast<std::size_t>(mask.height) * mask.width) {
        throw ValidationError("write_mask: inconsistent mask shape");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open mask file for writing: " + path.string());
    }
    out << "P5\n" << mask.width << " " << mask.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(mask.values.data()),
              static_cast<std::streamsize>(mask.values.size()));
    if (!out) {
        throw ValidationError("write failed: " + path.string());
    }
}

}  // namespace ocrect
