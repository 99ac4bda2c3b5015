//! One JSON document per session in a directory.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::session::GameSession;

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("store i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("encoding session {id}: {source}")]
    Encode { id: String, source: serde_json::Error },
}

/// A file that could not be turned back into a session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unloadable {
    pub path: PathBuf,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct SessionStore {
    dir: PathBuf,
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

impl SessionStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(io(&dir))?;
        Ok(SessionStore { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }

    /// Writes to a temporary sibling, syncs, then renames over the target.
    pub fn save(&self, session: &GameSession) -> Result<(), StoreError> {
        let body = serde_json::to_vec_pretty(session).map_err(|source| StoreError::Encode {
            id: session.id.clone(),
            source,
        })?;
        let target = self.path_for(&session.id);
        let tmp = self.dir.join(format!(".{}.json.tmp", session.id));
        let mut f = fs::File::create(&tmp).map_err(io(&tmp))?;
        f.write_all(&body).map_err(io(&tmp))?;
        f.sync_all().map_err(io(&tmp))?;
        fs::rename(&tmp, &target).map_err(io(&target))?;
        Ok(())
    }

    pub fn load(&self, path: &Path) -> Result<GameSession, String> {
        let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
        let session: GameSession = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        session.verify_replay().map_err(|e| e.to_string())?;
        if self.path_for(&session.id) != path {
            return Err(format!("file name does not match session id {}", session.id));
        }
        Ok(session)
    }

    /// Every `*.json` document, split into sessions and failures.
    pub fn load_all(&self) -> Result<(Vec<GameSession>, Vec<Unloadable>), StoreError> {
        let mut ok = Vec::new();
        let mut bad = Vec::new();
        let mut paths: Vec<PathBuf> = fs::read_dir(&self.dir)
            .map_err(io(&self.dir))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for path in paths {
            match self.load(&path) {
                Ok(s) => ok.push(s),
                Err(reason) => bad.push(Unloadable { path, reason }),
            }
        }
        Ok((ok, bad))
    }
}
