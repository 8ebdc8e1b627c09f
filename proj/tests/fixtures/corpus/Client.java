import java.sql.Connection;

class Client {
    Connection conn;

    void run() {
        conn.open();
        conn.close();
    }
}
