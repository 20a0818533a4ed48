#include <exception>
#include <iostream>

#include "CLI11.hpp"

#include "commands.h"
#include "permgeo/error.h"

int main(int argc, char** argv)
{
    CLI::App app{"permgeo: genome-wide permutation p-values by geometric counting"};
    app.require_subcommand(1);
    permgeo::cli::register_simulate(app);
    permgeo::cli::register_estimate(app);
    permgeo::cli::register_permute(app);
    permgeo::cli::register_compare(app);
    permgeo::cli::register_efftests(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const permgeo::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
