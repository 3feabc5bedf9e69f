//! Text interchange formats: graph6 and plain edge lists.

pub mod edgelist;
pub mod graph6;

pub use edgelist::{parse_edge_lists, write_edge_list, EdgeListError};
pub use graph6::{
    decode_graph6, encode_graph6, stream_decode, Graph6Error, Graph6ErrorKind, Graph6Stream,
    OnError, StreamError,
};
