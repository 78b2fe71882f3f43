#include "tavkit/subprocess.hpp"

#include <cstdio>
#include <cstdlib>

namespace tavkit {
namespace {

class PipeReader final : public io::ByteReader {
public:
    explicit PipeReader(const std::string& command) {
        pipe_ = popen(command.c_str(), "r");
        if (!pipe_)
            throw IoError("failed to spawn: " + command);
    }

    ~PipeReader() override {
        if (pipe_)
            pclose(pipe_);
    }

    std::size_t read(std::uint8_t* dst, std::size_t n) override {
        return fread(dst, 1, n, pipe_);
    }

private:
    FILE* pipe_ = nullptr;
};

} // namespace

std::unique_ptr<io::ByteReader> open_command_output(const std::string& command) {
    return std::make_unique<PipeReader>(command);
}

int run_command(const std::string& command) {
    int status = std::system(command.c_str());
    if (status < 0)
        return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace tavkit
