#include "orgsim/atomic_io.hpp"

#include <fstream>
#include <stdexcept>
#include <system_error>

namespace orgsim {

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content)
{
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out.good()) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ec2;
        std::filesystem::remove(tmp, ec2);
        throw std::runtime_error("cannot move " + tmp.string() + " to " +
                                 path.string() + ": " + ec.message());
    }
}

}  // namespace orgsim
