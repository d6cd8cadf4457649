# Command layer - typer commands, options and dependencies
