package com.acme.net;

import java.io.InputStream;
import java.io.OutputStream;
import java.net.ServerSocket;
import java.net.Socket;

public class EchoServer {
    private ServerSocket server;

    public void serveOne() throws Exception {
        Socket socket = server.accept();
        InputStream in = socket.getInputStream();
        OutputStream out = socket.getOutputStream();
        byte[] buf = new byte[512];
        int n = in.read(buf);
        out.write(buf, 0, n);
        out.flush();
        socket.close();
    }
}
