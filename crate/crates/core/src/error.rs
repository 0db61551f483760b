use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate kind `{0}` must act on at least one qubit")]
    ZeroArity(String),
    #[error("gate kind `{name}`: matrix has {got} entries, expected {expected}")]
    MatrixShape {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("gate kind `{0}` is not unitary")]
    NotUnitary(String),
    #[error("gate set `{gateset}` declares `{kind}` twice")]
    DuplicateKind { gateset: String, kind: String },
    #[error("gate set `{name}` has {size} kind(s); at least 2 are required")]
    GateSetTooSmall { name: String, size: usize },
    #[error("unknown gate kind `{0}`")]
    UnknownKind(String),
    #[error("gate kind id {0} is out of range")]
    KindOutOfRange(usize),
    #[error("gate `{kind}` takes {expected} operand(s), got {got}")]
    ArityMismatch {
        kind: String,
        expected: usize,
        got: usize,
    },
    #[error("qubit {qubit} is out of range for a {n_qubits}-qubit circuit")]
    InvalidQubit { qubit: usize, n_qubits: usize },
    #[error("gate `{kind}` uses qubit {qubit} twice")]
    DuplicateOperand { kind: String, qubit: usize },
    #[error("a circuit needs at least one qubit")]
    NoQubits,
    #[error("gate kind `{0}` is not a single-qubit gate")]
    NotSingleQubit(String),
    #[error("invalid identity block pair: {0}")]
    InvalidBlockPair(String),
    #[error("circuits use different gate sets (`{0}` vs `{1}`)")]
    GateSetMismatch(String, String),
}

/// Failure to parse the text circuit format. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Malformed symbol strings. Positions index symbols, starting at 0.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("malformed string: record starting at symbol {position} is truncated")]
    Truncated { position: usize },
    #[error("malformed string: symbol {symbol} at {position} is not a gate symbol")]
    UnknownGateSymbol { position: usize, symbol: u32 },
    #[error("malformed string: symbol {symbol} at {position} is not a base-{base} digit")]
    DigitOutOfRange {
        position: usize,
        symbol: u32,
        base: usize,
    },
    #[error("malformed string: operand {qubit} at {position} exceeds qubit count {n_qubits}")]
    OperandOutOfRange {
        position: usize,
        qubit: usize,
        n_qubits: usize,
    },
    #[error("malformed string: gate at {position} repeats qubit {qubit}")]
    DuplicateOperand { position: usize, qubit: usize },
    #[error("malformed string: bad token `{token}`")]
    BadToken { token: String },
    #[error("malformed instance word: {0}")]
    BadWord(String),
    #[error("a circuit needs at least one qubit")]
    NoQubits,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StegoError {
    #[error("gate set `{0}` has no registered identity block pair")]
    NoBlockPair(String),
    #[error("message of {0} bits exceeds the 32-bit length field")]
    MessageTooLong(usize),
    #[error("invalid message text: {0}")]
    BadMessage(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PromiseError {
    #[error("promise would preclude the identity encodings: {0}")]
    PrecludesEncoding(String),
    #[error("sample {index} does not satisfy promise `{promise}`")]
    SampleOutsidePromise { index: usize, promise: String },
    #[error("promise expression, column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error(transparent)]
    Stego(#[from] StegoError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("{n_qubits} qubits exceeds the simulator cap of {max}")]
    TooManyQubits { n_qubits: usize, max: usize },
    #[error("circuits have different qubit counts ({left} vs {right})")]
    ShapeMismatch { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("reduction produced a malformed instance: {0}")]
    MalformedReduction(#[from] CodecError),
    #[error(transparent)]
    Stego(#[from] StegoError),
}
