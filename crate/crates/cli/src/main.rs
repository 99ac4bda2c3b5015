use std::io;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::Parser;
use mum_cli::cli::{Cli, Command};
use mum_cli::{commands, http, play, SessionService};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { position, format } => commands::analyze(&position, format).map(print),
        Command::Table(args) => commands::table(&args).map(print),
        Command::Solve { position, budget } => commands::solve(&position, budget).map(print),
        Command::Play { position } => commands::position(&position).and_then(|pos| {
            let stdin = io::stdin();
            play::run(pos, position.policy, stdin.lock(), &mut io::stdout())?;
            Ok(())
        }),
        Command::Serve { store, port, host } => serve(store, host, port),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn print(s: String) {
    print!("{s}");
}

fn serve(store: std::path::PathBuf, host: String, port: u16) -> anyhow::Result<()> {
    tracing_subscriber::fmt().with_writer(io::stderr).init();
    let svc = SessionService::open(&store).context("opening session store")?;
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind((host.as_str(), port))
            .await
            .with_context(|| format!("binding {host}:{port}"))?;
        tracing::info!(addr = %listener.local_addr()?, store = %store.display(), "serving");
        axum::serve(listener, http::router(Arc::new(svc)))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await?;
        Ok(())
    })
}
