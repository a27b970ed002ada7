//! Stream transport: one thread per connection, one JSON message per line.

use std::io::{self, BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::Arc;
use std::thread;

use crate::protocol::handle_line;
use crate::service::PresentationService;

/// Serves requests from `reader` until end of stream. Sessions opened on
/// this connection and still open at the end are closed.
pub fn serve_connection<R: BufRead, W: Write>(
    service: &PresentationService,
    reader: R,
    mut writer: W,
) -> io::Result<()> {
    let mut opened: Vec<String> = Vec::new();
    let result = (|| {
        for line in reader.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let (response, new_session) = handle_line(service, &line);
            opened.extend(new_session);
            writer.write_all(response.as_bytes())?;
            writer.write_all(b"\n")?;
            writer.flush()?;
        }
        Ok(())
    })();
    for id in opened {
        // Already-closed sessions just report no-such-session.
        let _ = service.close_session(&id);
    }
    result
}

fn handle_stream(service: &PresentationService, stream: TcpStream) -> io::Result<()> {
    let peer = stream.peer_addr().ok();
    log::debug!("connection from {peer:?}");
    let reader = BufReader::new(stream.try_clone()?);
    let result = serve_connection(service, reader, stream);
    log::debug!("connection from {peer:?} ended");
    result
}

/// Accepts connections forever, each on its own thread.
pub fn serve(listener: TcpListener, service: Arc<PresentationService>) -> io::Result<()> {
    log::info!("listening on {}", listener.local_addr()?);
    for stream in listener.incoming() {
        let stream = match stream {
            Ok(s) => s,
            Err(e) => {
                log::warn!("accept failed: {e}");
                continue;
            }
        };
        let service = service.clone();
        thread::spawn(move || {
            if let Err(e) = handle_stream(&service, stream) {
                log::warn!("connection error: {e}");
            }
        });
    }
    Ok(())
}
