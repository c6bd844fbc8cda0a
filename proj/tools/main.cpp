#include "commands.hpp"

#include "carpet_recur/error.hpp"

#include <iostream>

namespace {

int exit_code_for(carpet_recur::ErrorCode code) {
    using carpet_recur::ErrorCode;
    switch (code) {
        case ErrorCode::Io: return 1;
        case ErrorCode::NonUniformFibre:
        case ErrorCode::InvalidTauPair: return 3;
        case ErrorCode::BudgetExceeded: return 4;
        default: return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantitative recurrence on Bedford-McMullen carpets", "carpet-recur"};
    app.require_subcommand(1);
    carpet_recur::cli::register_commands(app);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const carpet_recur::Error& e) {
        std::cerr << "carpet-recur: " << carpet_recur::error_code_name(e.code()) << ": " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "carpet-recur: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
