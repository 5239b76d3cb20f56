#pragma once

namespace maccfd {

/// Entry point behind the `maccfd` binary. Subcommands:
///   run <config>       execute the scenario and write its output set
///   validate <config>  parse and schema-check only
///   oracle <config>    exhaustive-search reference run (small grids)
///   plot <agg-csv> --kind <k> -o <path>   render an aggregate CSV
/// Returns 0 on success, 1 on runtime errors, 2 on usage errors.
int cli_main(int argc, const char* const* argv);

}  // namespace maccfd
