# Command-line front end: argument parsing, subcommand dispatch and report output
